//! Builds the driven, decaying two-level system and prints its 4x4 generator
//! together with the spectrum.

use lindblad::tls::{build_tls, TlsParams};
use lindblad::vectorize::{build_superoperator, spectrum};

fn main() -> lindblad::Result<()> {
    let model = build_tls(TlsParams::new(0.5, 1.2, 1.0)?);
    let l = build_superoperator(&model);
    let m = l.matrix();
    println!("vectorized generator:");
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|z| format!("{:+.3}{:+.3}i", z.re, z.im)).collect();
        println!("  {}", row.join("  "));
    }
    println!("eigenvalues:");
    for z in spectrum(&l)?.eigenvalues {
        println!("  {:+.6} {:+.6}i", z.re, z.im);
    }
    Ok(())
}
