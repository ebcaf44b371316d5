//! Krylov reduction of a random 4-level model: Hessenberg size, orthonormality
//! and the error against dense propagation as the Krylov dimension grows.

use lindblad::arnoldi::arnoldi_reduce;
use lindblad::model::random;
use lindblad::vectorize::{build_superoperator, propagate_matrix, PropagationMethod};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lindblad::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let model = random::model(4, 2, &mut rng);
    let rho0 = random::density_matrix(4, &mut rng);
    let times = [0.5, 1.0, 2.0];
    let exact = propagate_matrix(&build_superoperator(&model), rho0.matrix(), &times, PropagationMethod::Dense)?;

    println!("K   defect     max error");
    for k in [2, 4, 6, 8, 10, 15] {
        let red = arnoldi_reduce(&model, rho0.matrix(), k)?;
        let approx = red.propagate(&times)?;
        let err = exact
            .iter()
            .zip(&approx)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max);
        println!("{k:<3} {:.2e}   {err:.2e}", red.orthonormality_defect());
    }
    Ok(())
}
