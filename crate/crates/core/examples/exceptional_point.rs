//! The two-level system at its exceptional point: three eigenvalues merge at
//! -2γ/3 and the eigenvector matrix becomes numerically singular.

use lindblad::analysis::detect_degeneracy;
use lindblad::tls::{build_tls, TlsParams};
use lindblad::vectorize::{build_superoperator, spectrum};

fn main() -> lindblad::Result<()> {
    let params = TlsParams::exceptional_point(1.0);
    println!("detuning {:.6}, drive {:.6}", params.detuning, params.drive);
    let l = build_superoperator(&build_tls(params));
    for z in spectrum(&l)?.eigenvalues {
        println!("  λ = {:+.8} {:+.2e}i", z.re, z.im);
    }
    let report = detect_degeneracy(&l, 1e-3)?;
    for c in &report.clusters {
        println!("cluster of {} at {:+.6}, diameter {:.1e}", c.len(), c.center.re, c.diameter);
    }
    println!("eigenvector condition {:.2e}, defective: {}", report.eigenvector_condition, report.defective_flag);

    // Slightly off the exceptional point the eigenvectors are well conditioned again.
    let off = TlsParams::new(0.3, 0.5, 1.0)?;
    let report = detect_degeneracy(&build_superoperator(&build_tls(off)), 1e-3)?;
    println!("away from it: condition {:.2e}, defective: {}", report.eigenvector_condition, report.defective_flag);
    Ok(())
}
