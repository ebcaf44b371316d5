//! Closes the spin operators under the adjoint generator and evolves their
//! expectation values from the excited state.

use lindblad::heisenberg::{close_set, expectations, propagate_expectations};
use lindblad::model::DensityMatrix;
use lindblad::tls::{build_tls, spin_basis, TlsParams};

fn main() -> lindblad::Result<()> {
    let model = build_tls(TlsParams::new(0.3, 0.8, 1.0)?);
    let named = spin_basis();
    let ops: Vec<_> = named.iter().map(|(_, m)| m.clone()).collect();
    let rep = close_set(&model, &ops)?;

    println!("adjoint action coefficients (row k: L† X_k = Σ_j c_kj X_j):");
    let c = rep.coeffs();
    for (k, (label, _)) in named.iter().enumerate() {
        let row: Vec<String> = c.row(k).iter().map(|z| format!("{:+.3}", z.re)).collect();
        println!("  {label:>2}: {}", row.join(" "));
    }

    let r0 = expectations(rep.basis(), &DensityMatrix::basis_state(2, 0))?;
    let times: Vec<f64> = (0..=8).map(|k| k as f64 * 0.5).collect();
    println!("t     <sx>     <sy>     <sz>");
    for (t, r) in times.iter().zip(propagate_expectations(&rep, &r0, &times)?) {
        println!("{t:<4}  {:+.4}  {:+.4}  {:+.4}", r.values[0].re, r.values[1].re, r.values[2].re);
    }
    Ok(())
}
