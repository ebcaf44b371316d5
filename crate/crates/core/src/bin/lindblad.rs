use std::process::ExitCode;

use clap::Parser;
use lindblad::cli::{self, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match cli::run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        // Output piped into `head` and friends.
        Err(lindblad::Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code(&err) as u8)
        }
    }
}
