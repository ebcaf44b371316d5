//! Expectation values of a closed operator set.
//!
//! If `L† Xₖ = Σⱼ lₖⱼ Xⱼ` for every member of a set `{Xₖ}`, the expectations
//! `xₖ = Tr(Xₖ ρ)` obey the linear system `dR/dt = L† R` with the `M × M`
//! coefficient matrix `(lₖⱼ)`. Row `k` holds the derivative of `xₖ`.

use crate::error::{Error, Result};
use crate::linalg::{self, condition_one, hs_inner_unchecked, ComplexMatrix, ComplexVector, EigenDecomposition, C64};
use crate::model::{trace_of_product, DensityMatrix, LindbladModel};
use crate::vectorize::check_times;

/// Relative residual allowed when expressing `L† Xₖ` in the basis.
pub const CLOSURE_TOL: f64 = 1e-10;
/// Gram matrices with a larger 1-norm condition number are rejected.
pub const MAX_GRAM_CONDITION: f64 = 1e12;

#[derive(Clone, Debug)]
pub struct AdjointRep {
    basis: Vec<ComplexMatrix>,
    coeffs: ComplexMatrix,
    closure_residuals: Vec<f64>,
}

/// `(x₁, …, x_M)` with `xₖ = Tr(Xₖ ρ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationVector {
    pub values: ComplexVector,
}

fn gram(basis: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let m = basis.len();
    let g = ComplexMatrix::from_fn(m, m, |i, j| hs_inner_unchecked(&basis[i], &basis[j]));
    let condition = condition_one(&g);
    if condition > MAX_GRAM_CONDITION {
        return Err(Error::DependentBasis { condition });
    }
    Ok(g)
}

fn check_basis(basis: &[ComplexMatrix], n: usize) -> Result<()> {
    if basis.is_empty() {
        return Err(Error::InvalidParameter("operator basis is empty".into()));
    }
    basis.iter().try_for_each(|x| x.require_dim(n))
}

/// Finds `lₖⱼ` by Hilbert-Schmidt least squares for each `k` and checks that
/// the set is closed under `L†`.
pub fn close_set(model: &LindbladModel, basis: &[ComplexMatrix]) -> Result<AdjointRep> {
    check_basis(basis, model.dim())?;
    let m = basis.len();
    let g = gram(basis)?;
    let images: Vec<ComplexMatrix> = basis.iter().map(|x| model.adjoint(x)).collect();
    // Column k of `rhs` holds ⟨Xᵢ, L†Xₖ⟩.
    let rhs = ComplexMatrix::from_fn(m, m, |i, k| hs_inner_unchecked(&basis[i], &images[k]));
    let sol = linalg::solve(&g, &rhs)?;
    let coeffs = sol.transpose();

    let mut closure_residuals = Vec::with_capacity(m);
    for (k, image) in images.iter().enumerate() {
        let mut r = image.clone();
        for (j, x) in basis.iter().enumerate() {
            r.axpy(-coeffs[(k, j)], x);
        }
        let residual = r.norm_fro();
        let scale = image.norm_fro();
        if residual > CLOSURE_TOL * scale {
            return Err(Error::NotClosed {
                index: k,
                residual,
                relative: residual / scale,
            });
        }
        closure_residuals.push(residual);
    }
    Ok(AdjointRep {
        basis: basis.to_vec(),
        coeffs,
        closure_residuals,
    })
}

impl AdjointRep {
    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    /// The `M × M` matrix `(lₖⱼ)`.
    pub fn coeffs(&self) -> &ComplexMatrix {
        &self.coeffs
    }

    pub fn closure_residuals(&self) -> &[f64] {
        &self.closure_residuals
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coefficients `c` with `x = Σ cₖ Xₖ`, so `⟨x⟩ = Σ cₖ xₖ`.
    pub fn decompose(&self, x: &ComplexMatrix) -> Result<ComplexVector> {
        decompose(&self.basis, x)
    }
}

/// Expresses `x` in `basis`; fails with [`Error::NotInSpan`] if the
/// least-squares residual exceeds the closure tolerance.
pub fn decompose(basis: &[ComplexMatrix], x: &ComplexMatrix) -> Result<ComplexVector> {
    let n = x.require_square()?;
    check_basis(basis, n)?;
    let g = gram(basis)?;
    let b = ComplexVector::from_iter(basis.iter().map(|q| hs_inner_unchecked(q, x)));
    let c = linalg::Lu::factor(&g)?.solve_vec(&b);
    let mut r = x.clone();
    for (q, &ck) in basis.iter().zip(c.iter()) {
        r.axpy(-ck, q);
    }
    let scale = x.norm_fro();
    if r.norm_fro() > CLOSURE_TOL * scale {
        return Err(Error::NotInSpan {
            relative: r.norm_fro() / scale,
        });
    }
    Ok(c)
}

/// The `n²` matrix units `E_ab = |a⟩⟨b|`, ordered by `b·n + a`. Always
/// closed under `L†`, and the coefficients of any `X` are `vec(X)`.
pub fn matrix_unit_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(n * n);
    for b in 0..n {
        for a in 0..n {
            let mut e = ComplexMatrix::zeros(n, n);
            e[(a, b)] = C64::new(1.0, 0.0);
            out.push(e);
        }
    }
    out
}

/// `xₖ = Tr(Xₖ ρ)`.
pub fn expectations(basis: &[ComplexMatrix], rho: &DensityMatrix) -> Result<ExpectationVector> {
    check_basis(basis, rho.dim())?;
    let values = basis.iter().map(|x| trace_of_product(x, rho.matrix())).collect();
    Ok(ExpectationVector { values })
}

/// `R(t) = e^{L† t} R(0)` at each time.
pub fn propagate_expectations(
    rep: &AdjointRep,
    r0: &ExpectationVector,
    times: &[f64],
) -> Result<Vec<ExpectationVector>> {
    if r0.values.len() != rep.len() {
        return Err(Error::DimensionMismatch {
            expected: (rep.len(), 1),
            found: (r0.values.len(), 1),
        });
    }
    check_times(times)?;
    times
        .iter()
        .map(|&t| {
            let values = linalg::expm(&rep.coeffs, t)?.matvec(&r0.values);
            Ok(ExpectationVector { values })
        })
        .collect()
}

/// Eigenvalues of `(lₖⱼ)`. Their conjugates are eigenvalues of `L`.
pub fn adjoint_spectrum(rep: &AdjointRep) -> Result<EigenDecomposition> {
    linalg::eig(&rep.coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{spectral_distance, ZERO};
    use crate::model::random;
    use crate::tls::{self, TlsParams};
    use crate::vectorize::{self, build_superoperator, PropagationMethod};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spin_basis() -> Vec<ComplexMatrix> {
        tls::spin_basis().into_iter().map(|(_, m)| m).collect()
    }

    #[test]
    fn tls_coefficient_matrix() {
        let (d, e, g) = (0.35, 0.8, 0.6);
        let model = tls::build_tls(TlsParams::new(d, e, g).unwrap());
        let rep = close_set(&model, &spin_basis()).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[
            [-g / 2.0, -d, 0.0, 0.0],
            [d, -g / 2.0, -e, 0.0],
            [0.0, e, -g, -g / 2.0],
            [0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert!(rep.coeffs().max_abs_diff(&expect) < 1e-15);
        assert!(rep.coeffs().row(3).iter().all(|z| *z == ZERO));
        assert!(rep.closure_residuals().iter().all(|&r| r < 1e-15));
    }

    #[test]
    fn trivial_model_has_zero_coefficients() {
        let rep = close_set(&LindbladModel::trivial(2), &spin_basis()).unwrap();
        assert_eq!(rep.coeffs().max_abs(), 0.0);
        assert!(adjoint_spectrum(&rep).unwrap().eigenvalues.iter().all(|z| *z == ZERO));
    }

    #[test]
    fn incomplete_set_is_not_closed() {
        let model = tls::build_tls(TlsParams::new(0.5, 0.0, 0.2).unwrap());
        match close_set(&model, &[tls::sx()]) {
            Err(Error::NotClosed { index: 0, relative, .. }) => {
                // The missing part is −Δ Sy.
                let expect = 0.5 / (0.25f64 + 0.01).sqrt();
                assert!((relative - expect).abs() < 1e-12);
            }
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }

    #[test]
    fn dependent_basis_rejected() {
        let model = tls::build_tls(TlsParams::new(0.5, 0.1, 0.2).unwrap());
        let basis = vec![tls::sx(), tls::sx().scale_real(2.0)];
        assert!(matches!(close_set(&model, &basis), Err(Error::DependentBasis { .. })));
    }

    #[test]
    fn expectation_examples() {
        let rho = DensityMatrix::basis_state(2, 0);
        let x = expectations(&[ComplexMatrix::identity(2)], &rho).unwrap();
        assert_eq!(x.values[0], C64::new(1.0, 0.0));
        let x = expectations(&[tls::sz()], &rho).unwrap();
        assert_eq!(x.values[0], C64::new(0.5, 0.0));
        let x = expectations(&spin_basis(), &DensityMatrix::maximally_mixed(2)).unwrap();
        assert_eq!(x.values, ComplexVector::from_real(&[0.0, 0.0, 0.0, 1.0]).unwrap());
    }

    #[test]
    fn spontaneous_decay_of_inversion() {
        let g = 0.9;
        let model = tls::build_tls(TlsParams::new(0.0, 0.0, g).unwrap());
        let rep = close_set(&model, &spin_basis()).unwrap();
        let r0 = expectations(rep.basis(), &DensityMatrix::basis_state(2, 0)).unwrap();
        let times = [0.0, 0.5, 1.0, 2.0, 5.0];
        let out = propagate_expectations(&rep, &r0, &times).unwrap();
        assert_eq!(out[0], r0);
        for (r, &t) in out.iter().zip(&times) {
            assert!((r.values[2].re - ((-g * t).exp() - 0.5)).abs() < 1e-14);
            assert!((r.values[3] - C64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn matrix_units_reproduce_schrodinger_picture() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 3;
        let model = random::model(n, 2, &mut rng);
        let rho0 = random::density_matrix(n, &mut rng);
        let obs = random::hermitian(n, &mut rng);
        let basis = matrix_unit_basis(n);
        let rep = close_set(&model, &basis).unwrap();
        let c = rep.decompose(&obs).unwrap();
        assert!(c.max_abs_diff(&vectorize::vec(&obs)) < 1e-15);

        let times = [0.0, 0.3, 1.0, 2.5];
        let r0 = expectations(&basis, &rho0).unwrap();
        let heis = propagate_expectations(&rep, &r0, &times).unwrap();
        let l = build_superoperator(&model);
        let schr = vectorize::propagate(&l, &rho0, &times, PropagationMethod::Dense).unwrap();
        for (r, rho) in heis.iter().zip(&schr) {
            let a: C64 = c.iter().zip(r.values.iter()).map(|(x, y)| x * y).sum();
            let b = trace_of_product(&obs, rho.matrix());
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn adjoint_spectrum_is_conjugate_of_superoperator_spectrum() {
        let model = tls::build_tls(TlsParams::new(0.2, 1.4, 0.5).unwrap());
        let rep = close_set(&model, &spin_basis()).unwrap();
        let heis: Vec<C64> = adjoint_spectrum(&rep).unwrap().eigenvalues.iter().map(|z| z.conj()).collect();
        let vec_spec = vectorize::spectrum(&build_superoperator(&model)).unwrap().eigenvalues;
        assert!(spectral_distance(&heis, &vec_spec) < 1e-10);
    }

    #[test]
    fn out_of_span_observable_rejected() {
        let basis = vec![tls::sx(), tls::sz()];
        assert!(matches!(decompose(&basis, &tls::sy()), Err(Error::NotInSpan { .. })));
    }
}
