//! Liouville-space representation by column stacking.
//!
//! Entry `(a, b)` of an `n × n` matrix lands at index `b·n + a` of its `n²`
//! vector. With this convention
//!
//! ```text
//! vec(A X B) = (Bᵀ ⊗ A) vec(X)
//! ```
//!
//! and the generator becomes the `n² × n²` matrix
//!
//! ```text
//! L = −i(I ⊗ H − Hᵀ ⊗ I) + Σᵢ γᵢ (Āᵢ ⊗ Aᵢ − ½ I ⊗ Aᵢ†Aᵢ − ½ (Aᵢ†Aᵢ)ᵀ ⊗ I)
//! ```

use crate::error::{Error, Result};
use crate::linalg::{self, kron, ComplexMatrix, ComplexVector, EigenDecomposition, C64, I};
use crate::model::{validate_state, DensityMatrix, LindbladModel};

/// Column-stacks `rho`.
pub fn vec(rho: &ComplexMatrix) -> ComplexVector {
    let (r, c) = (rho.rows(), rho.cols());
    let mut out = Vec::with_capacity(r * c);
    for b in 0..c {
        for a in 0..r {
            out.push(rho[(a, b)]);
        }
    }
    ComplexVector::from_raw(out)
}

/// Inverse of [`vec`] for an `n × n` matrix.
pub fn unvec(r: &ComplexVector, n: usize) -> Result<ComplexMatrix> {
    if n == 0 || r.len() != n * n {
        return Err(Error::NotSquareLength { len: r.len(), n });
    }
    Ok(unvec_unchecked(r, n))
}

fn unvec_unchecked(r: &ComplexVector, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |a, b| r[b * n + a])
}

/// The generator as an explicit `n² × n²` matrix acting on column-stacked
/// density matrices.
#[derive(Clone, Debug)]
pub struct Superoperator {
    dim_hilbert: usize,
    matrix: ComplexMatrix,
}

impl Superoperator {
    pub fn dim_hilbert(&self) -> usize {
        self.dim_hilbert
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `unvec(L · vec(rho))`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        rho.require_dim(self.dim_hilbert)?;
        Ok(unvec_unchecked(&self.matrix.matvec(&vec(rho)), self.dim_hilbert))
    }
}

pub fn build_superoperator(model: &LindbladModel) -> Superoperator {
    let n = model.dim();
    let id = ComplexMatrix::identity(n);
    let h = model.hamiltonian();
    let mut l = &kron(&id, h) - &kron(&h.transpose(), &id);
    l = l.scale(-I);
    for jump in model.jumps().iter().filter(|j| j.rate() > 0.0) {
        let a = jump.operator();
        let g = C64::new(jump.rate(), 0.0);
        let ada = a.adjoint().matmul(a);
        l.axpy(g, &kron(&a.conj(), a));
        l.axpy(-0.5 * g, &kron(&id, &ada));
        l.axpy(-0.5 * g, &kron(&ada.transpose(), &id));
    }
    Superoperator {
        dim_hilbert: n,
        matrix: l,
    }
}

/// How `e^{Lt}` is applied to `vec(ρ₀)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PropagationMethod {
    /// Form `e^{Lt}` by scaling and squaring, then multiply.
    #[default]
    Dense,
    /// Apply `e^{Lt}` with matrix-vector products only.
    Action,
}

pub(crate) fn check_times(times: &[f64]) -> Result<()> {
    let mut prev = 0.0;
    for &t in times {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidTimes(format!("time {t} is negative or not finite")));
        }
        if t < prev {
            return Err(Error::InvalidTimes(format!("times not ascending at {t}")));
        }
        prev = t;
    }
    Ok(())
}

/// `ρ(t) = unvec(e^{Lt} vec(ρ₀))` for each time, validated as a state.
pub fn propagate(
    superop: &Superoperator,
    rho0: &DensityMatrix,
    times: &[f64],
    method: PropagationMethod,
) -> Result<Vec<DensityMatrix>> {
    propagate_matrix(superop, rho0.matrix(), times, method)?
        .into_iter()
        .map(validate_state)
        .collect()
}

/// Like [`propagate`] but for an arbitrary initial matrix, without state
/// validation.
pub fn propagate_matrix(
    superop: &Superoperator,
    rho0: &ComplexMatrix,
    times: &[f64],
    method: PropagationMethod,
) -> Result<Vec<ComplexMatrix>> {
    let n = superop.dim_hilbert;
    rho0.require_dim(n)?;
    check_times(times)?;
    let v0 = vec(rho0);
    times
        .iter()
        .map(|&t| {
            let v = match method {
                PropagationMethod::Dense => linalg::expm(&superop.matrix, t)?.matvec(&v0),
                PropagationMethod::Action => linalg::expm_action(&superop.matrix, &v0, t)?,
            };
            Ok(unvec_unchecked(&v, n))
        })
        .collect()
}

/// All `n²` eigenvalues of the superoperator.
pub fn spectrum(superop: &Superoperator) -> Result<EigenDecomposition> {
    linalg::eig(&superop.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{sort_complex, ZERO};
    use crate::model::random;
    use crate::tls::{self, TlsParams};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn vec_examples() {
        let m = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(vec(&m), ComplexVector::from_real(&[1.0, 3.0, 2.0, 4.0]).unwrap());
        assert_eq!(
            vec(&ComplexMatrix::identity(2)),
            ComplexVector::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap()
        );
        let g = DensityMatrix::basis_state(2, 1);
        assert_eq!(vec(g.matrix()), ComplexVector::from_real(&[0.0, 0.0, 0.0, 1.0]).unwrap());
        assert_eq!(unvec(&vec(&m), 2).unwrap(), m);
        assert!(matches!(
            unvec(&ComplexVector::zeros(5), 2),
            Err(Error::NotSquareLength { len: 5, n: 2 })
        ));
    }

    /// Dissipator-only TLS.
    #[test]
    fn pure_decay_superoperator() {
        let g = 0.7;
        let l = build_superoperator(&tls::build_tls(TlsParams::new(0.0, 0.0, g).unwrap()));
        let expect = ComplexMatrix::from_real_rows(&[
            [-g, 0.0, 0.0, 0.0],
            [0.0, -g / 2.0, 0.0, 0.0],
            [0.0, 0.0, -g / 2.0, 0.0],
            [g, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert!(l.matrix().max_abs_diff(&expect) < 1e-16);

        let mut eigs = spectrum(&l).unwrap().eigenvalues;
        sort_complex(&mut eigs);
        let want = [-g, -g / 2.0, -g / 2.0, 0.0];
        for (z, w) in eigs.iter().zip(want) {
            assert!((z - c(w, 0.0)).norm() < 1e-12, "{eigs:?}");
        }
    }

    /// The superoperator at `H = ΔSz + εSx` has `−γ/2 + iΔ` in slot (1,1).
    #[test]
    fn driven_tls_superoperator() {
        let (d, e, g) = (0.4, 0.9, 0.7);
        let l = build_superoperator(&tls::build_tls(TlsParams::new(d, e, g).unwrap()));
        let h = e / 2.0;
        let expect = ComplexMatrix::from_rows(&[
            [c(-g, 0.0), c(0.0, -h), c(0.0, h), ZERO],
            [c(0.0, -h), c(-g / 2.0, d), ZERO, c(0.0, h)],
            [c(0.0, h), ZERO, c(-g / 2.0, -d), c(0.0, -h)],
            [c(g, 0.0), c(0.0, h), c(0.0, -h), ZERO],
        ])
        .unwrap();
        assert!(l.matrix().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn trivial_model() {
        let l = build_superoperator(&LindbladModel::trivial(3));
        assert_eq!(l.matrix().max_abs(), 0.0);
        assert!(spectrum(&l).unwrap().eigenvalues.iter().all(|z| *z == ZERO));
    }

    #[test]
    fn excited_population_decays() {
        let g = 1.3;
        let l = build_superoperator(&tls::build_tls(TlsParams::new(0.0, 0.0, g).unwrap()));
        let rho0 = DensityMatrix::basis_state(2, 0);
        let times = [0.0, 0.25, 1.0, 3.0];
        for method in [PropagationMethod::Dense, PropagationMethod::Action] {
            let out = propagate(&l, &rho0, &times, method).unwrap();
            assert_eq!(out[0], rho0);
            for (rho, &t) in out.iter().zip(&times) {
                assert!((rho.matrix()[(0, 0)].re - (-g * t).exp()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn semigroup_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let model = random::model(3, 2, &mut rng);
        let l = build_superoperator(&model);
        let rho0 = random::density_matrix(3, &mut rng);
        let (t, s) = (0.6, 1.1);
        let mid = propagate(&l, &rho0, &[t], PropagationMethod::Dense).unwrap().remove(0);
        let two = propagate(&l, &mid, &[s], PropagationMethod::Dense).unwrap().remove(0);
        let one = propagate(&l, &rho0, &[t + s], PropagationMethod::Dense).unwrap().remove(0);
        assert!(one.matrix().max_abs_diff(two.matrix()) < 1e-13);
    }

    #[test]
    fn long_time_propagation_stays_a_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let model = random::model(4, 3, &mut rng);
        let l = build_superoperator(&model);
        let rho0 = random::density_matrix(4, &mut rng);
        let times: Vec<f64> = (0..=20).map(f64::from).collect();
        for method in [PropagationMethod::Dense, PropagationMethod::Action] {
            for rho in propagate(&l, &rho0, &times, method).unwrap() {
                assert!((rho.matrix().trace() - 1.0).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn rejects_bad_times() {
        let l = build_superoperator(&LindbladModel::trivial(2));
        let rho0 = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            propagate(&l, &rho0, &[1.0, 0.5], PropagationMethod::Dense),
            Err(Error::InvalidTimes(_))
        ));
        assert!(matches!(
            propagate(&l, &rho0, &[-1.0], PropagationMethod::Dense),
            Err(Error::InvalidTimes(_))
        ));
    }

    #[test]
    fn trace_row_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let l = build_superoperator(&random::model(4, 2, &mut rng));
        let row = vec(&ComplexMatrix::identity(4));
        let m = l.matrix();
        for j in 0..16 {
            let s: C64 = (0..16).map(|i| row[i].conj() * m[(i, j)]).sum();
            assert!(s.norm() < 1e-11);
        }
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
            .prop_map(move |v| ComplexMatrix::from_fn(n, n, |i, j| c(v[i * n + j].0, v[i * n + j].1)))
    }

    proptest! {
        #[test]
        fn sandwich_rule(a in arb_matrix(3), x in arb_matrix(3), b in arb_matrix(3)) {
            let lhs = vec(&a.matmul(&x).matmul(&b));
            let rhs = kron(&b.transpose(), &a).matvec(&vec(&x));
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }

        #[test]
        fn unvec_inverts_vec(x in arb_matrix(4)) {
            prop_assert_eq!(unvec(&vec(&x), 4).unwrap(), x);
        }

        #[test]
        fn superoperator_matches_generator(seed in any::<u64>(), n in 2usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let model = random::model(n, 2, &mut rng);
            let rho = random::matrix(n, &mut rng);
            let l = build_superoperator(&model);
            let diff = l.apply(&rho).unwrap().max_abs_diff(&model.apply_generator(&rho).unwrap());
            prop_assert!(diff <= 1e-12 * model.scale().max(1.0));
        }
    }
}
