//! Small timing sweep of the dense and Krylov propagators. Pass dimensions as
//! arguments, e.g. `cargo run --release --example scaling_bench -- 4 8 16`.

use std::time::Duration;

use lindblad::analysis::bench::{fit_slopes, format_slopes, run_benchmark, write_csv, BenchConfig, BenchMethod};

fn main() -> lindblad::Result<()> {
    let dims: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let config = BenchConfig {
        dims: if dims.is_empty() { vec![4, 8, 12] } else { dims },
        methods: vec![
            BenchMethod::FullDiagonalization,
            BenchMethod::FullExpm,
            BenchMethod::ExpmAction,
            BenchMethod::Arnoldi(20),
        ],
        repetitions: 3,
        timeout: Duration::from_secs(20),
        ..BenchConfig::default()
    };
    let records = run_benchmark(&config)?;
    write_csv(std::io::stdout().lock(), &records)?;
    print!("{}", format_slopes(&fit_slopes(&records)));
    Ok(())
}
