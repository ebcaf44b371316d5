//! Evolves the same random model with every propagation route and reports how
//! far each one is from the dense exponential.

use lindblad::arnoldi::arnoldi_reduce;
use lindblad::heisenberg::{close_set, expectations, matrix_unit_basis, propagate_expectations};
use lindblad::linalg::ComplexMatrix;
use lindblad::model::random;
use lindblad::vectorize::{build_superoperator, propagate_matrix, unvec, PropagationMethod};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lindblad::Result<()> {
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let model = random::model(n, 2, &mut rng);
    let rho0 = random::density_matrix(n, &mut rng);
    let l = build_superoperator(&model);
    let times: Vec<f64> = (0..=5).map(|k| k as f64).collect();

    let dense = propagate_matrix(&l, rho0.matrix(), &times, PropagationMethod::Dense)?;
    let action = propagate_matrix(&l, rho0.matrix(), &times, PropagationMethod::Action)?;
    let krylov = arnoldi_reduce(&model, rho0.matrix(), n * n - 1)?.propagate(&times)?;

    // Tr(E_ab ρ) = ρ_ba, so the matrix-unit expectations are vec(ρᵀ).
    let units = matrix_unit_basis(n);
    let rep = close_set(&model, &units)?;
    let r0 = expectations(&units, &rho0)?;
    let heis: Vec<ComplexMatrix> = propagate_expectations(&rep, &r0, &times)?
        .into_iter()
        .map(|r| unvec(&r.values, n).map(|m| m.transpose()))
        .collect::<lindblad::Result<_>>()?;

    let diff = |other: &[ComplexMatrix]| dense.iter().zip(other).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max);
    println!("expm action   {:.2e}", diff(&action));
    println!("arnoldi       {:.2e}", diff(&krylov));
    println!("heisenberg    {:.2e}", diff(&heis));
    println!("trace at t=5  {:.12}", dense[5].trace().re);
    Ok(())
}
