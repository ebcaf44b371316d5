//! The Lindblad model and density matrices.
//!
//! Units have ħ = 1, so Hamiltonian entries are angular frequencies.
//!
//! The Schrödinger-picture generator is
//!
//! ```text
//! L ρ  = −i[H, ρ] + Σᵢ γᵢ (Aᵢ ρ Aᵢ† − ½{Aᵢ†Aᵢ, ρ})
//! ```
//!
//! and its Hilbert-Schmidt adjoint, acting on observables, is
//!
//! ```text
//! L† X = +i[H, X] + Σᵢ γᵢ (Aᵢ† X Aᵢ − ½{Aᵢ†Aᵢ, X})
//! ```

use crate::error::{Error, Result, StateInvariant};
use crate::linalg::{self, ComplexMatrix, C64, I, ONE, ZERO};

/// A dissipative channel `γ (A ρ A† − ½{A†A, ρ})`.
#[derive(Clone, Debug)]
pub struct Jump {
    rate: f64,
    operator: ComplexMatrix,
    operator_dag: ComplexMatrix,
    dag_op: ComplexMatrix,
}

impl Jump {
    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn operator(&self) -> &ComplexMatrix {
        &self.operator
    }
}

#[derive(Clone, Debug)]
pub struct LindbladModel {
    dim: usize,
    hamiltonian: ComplexMatrix,
    jumps: Vec<Jump>,
}

/// Relative tolerance on `‖H − H†‖ / ‖H‖`.
pub const HAMILTONIAN_HERMITICITY_TOL: f64 = 1e-12;

impl LindbladModel {
    /// Validates and builds a model from `H` and `(γᵢ, Aᵢ)` pairs.
    pub fn new(hamiltonian: ComplexMatrix, jumps: Vec<(f64, ComplexMatrix)>) -> Result<Self> {
        let dim = hamiltonian.require_square()?;
        if !hamiltonian.is_finite() {
            return Err(Error::NonFinite { row: 0, col: 0 });
        }
        let defect = hamiltonian.hermiticity_defect();
        if defect > HAMILTONIAN_HERMITICITY_TOL * hamiltonian.norm_fro() {
            return Err(Error::NonHermitianHamiltonian { defect });
        }
        let jumps = jumps
            .into_iter()
            .enumerate()
            .map(|(index, (rate, operator))| {
                if !rate.is_finite() || rate < 0.0 {
                    return Err(Error::InvalidRate { index, rate });
                }
                operator.require_dim(dim)?;
                if !operator.is_finite() {
                    return Err(Error::NonFinite { row: 0, col: 0 });
                }
                let operator_dag = operator.adjoint();
                let dag_op = operator_dag.matmul(&operator);
                Ok(Jump {
                    rate,
                    operator,
                    operator_dag,
                    dag_op,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim,
            hamiltonian,
            jumps,
        })
    }

    /// Model with `H = 0` and no jumps on an `n`-dimensional space.
    pub fn trivial(n: usize) -> Self {
        Self {
            dim: n,
            hamiltonian: ComplexMatrix::zeros(n, n),
            jumps: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    /// `‖H‖ + Σ γᵢ ‖Aᵢ‖²` (Frobenius norms), a size scale for the generator.
    pub fn scale(&self) -> f64 {
        self.hamiltonian.norm_fro()
            + self
                .jumps
                .iter()
                .map(|j| j.rate * j.operator.norm_fro().powi(2))
                .sum::<f64>()
    }

    /// `L ρ`. The input need not be a valid state.
    pub fn apply_generator(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        rho.require_dim(self.dim)?;
        Ok(self.generator(rho))
    }

    pub(crate) fn generator(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = linalg::commutator(&self.hamiltonian, rho).scale(-I);
        for jump in self.active_jumps() {
            let g = C64::new(jump.rate, 0.0);
            let a_rho = jump.operator.matmul(rho);
            out.axpy(g, &a_rho.matmul(&jump.operator_dag));
            out.axpy(-0.5 * g, &linalg::anticommutator(&jump.dag_op, rho));
        }
        out
    }

    /// `L† X`.
    pub fn apply_adjoint(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        x.require_dim(self.dim)?;
        Ok(self.adjoint(x))
    }

    pub(crate) fn adjoint(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = linalg::commutator(&self.hamiltonian, x).scale(I);
        for jump in self.active_jumps() {
            let g = C64::new(jump.rate, 0.0);
            let ad_x = jump.operator_dag.matmul(x);
            out.axpy(g, &ad_x.matmul(&jump.operator));
            out.axpy(-0.5 * g, &linalg::anticommutator(&jump.dag_op, x));
        }
        out
    }

    /// `(Tr(X · Lρ), Tr((L†X) · ρ))`, which agree for any `ρ`, `X`.
    pub fn duality_check(&self, rho: &ComplexMatrix, x: &ComplexMatrix) -> Result<(C64, C64)> {
        rho.require_dim(self.dim)?;
        x.require_dim(self.dim)?;
        let schrodinger = trace_of_product(x, &self.generator(rho));
        let heisenberg = trace_of_product(&self.adjoint(x), rho);
        Ok((schrodinger, heisenberg))
    }

    fn active_jumps(&self) -> impl Iterator<Item = &Jump> {
        self.jumps.iter().filter(|j| j.rate > 0.0)
    }
}

/// `Tr(A B)` without forming the product.
pub fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let n = a.rows();
    let mut acc = ZERO;
    for i in 0..n {
        for k in 0..a.cols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Tolerances used when validating a density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateTolerances {
    /// Bound on `‖ρ − ρ†‖ / ‖ρ‖`.
    pub hermiticity: f64,
    /// Bound on `|Tr ρ − 1|`.
    pub trace: f64,
    /// Smallest eigenvalue allowed is `-positivity`.
    pub positivity: f64,
}

impl Default for StateTolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-12,
            trace: 1e-12,
            positivity: 1e-10,
        }
    }
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The pure state `|k⟩⟨k|`.
    pub fn basis_state(n: usize, k: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(k, k)] = ONE;
        Self { matrix: m }
    }

    /// `I / n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
        }
    }
}

impl TryFrom<ComplexMatrix> for DensityMatrix {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        validate_state(m)
    }
}

/// Checks the density-matrix invariants with default tolerances.
pub fn validate_state(rho: ComplexMatrix) -> Result<DensityMatrix> {
    validate_state_with(rho, &StateTolerances::default())
}

pub fn validate_state_with(rho: ComplexMatrix, tol: &StateTolerances) -> Result<DensityMatrix> {
    rho.require_square()?;
    let herm = rho.hermiticity_defect();
    let scale = rho.norm_fro().max(f64::MIN_POSITIVE);
    if herm > tol.hermiticity * scale {
        return Err(Error::InvalidState {
            invariant: StateInvariant::Hermiticity,
            deviation: herm / scale,
            tolerance: tol.hermiticity,
        });
    }
    let trace_dev = (rho.trace() - ONE).norm();
    if trace_dev > tol.trace {
        return Err(Error::InvalidState {
            invariant: StateInvariant::Trace,
            deviation: trace_dev,
            tolerance: tol.trace,
        });
    }
    let sym = (&rho + &rho.adjoint()).scale_real(0.5);
    let min_eig = linalg::eigenvalues(&sym)?
        .into_iter()
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min);
    if min_eig < -tol.positivity {
        return Err(Error::InvalidState {
            invariant: StateInvariant::Positivity,
            deviation: -min_eig,
            tolerance: tol.positivity,
        });
    }
    Ok(DensityMatrix { matrix: rho })
}

/// Random generators for property tests and benchmarks.
///
/// Entries are complex Gaussians scaled by `1/√n`, so operator norms stay
/// O(1) as the dimension grows.
pub mod random {
    use rand::Rng;
    use rand_distr::StandardNormal;

    use super::{DensityMatrix, LindbladModel};
    use crate::linalg::{ComplexMatrix, C64};

    fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
        rng.sample(StandardNormal)
    }

    pub fn complex_gaussian<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> ComplexMatrix {
        let s = (0.5 / n as f64).sqrt();
        ComplexMatrix::from_fn(n, m, |_, _| C64::new(s * normal(rng), s * normal(rng)))
    }

    /// Symmetrized Gaussian matrix `(G + G†)/2`.
    pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
        let g = complex_gaussian(n, n, rng);
        (&g + &g.adjoint()).scale_real(0.5)
    }

    /// Random L-GKS model with `jumps` channels and rates in `(0, 1]`.
    pub fn model<R: Rng + ?Sized>(n: usize, jumps: usize, rng: &mut R) -> LindbladModel {
        let h = hermitian(n, rng);
        let jumps = (0..jumps)
            .map(|_| {
                let rate = 1.0 - rng.random::<f64>();
                (rate, complex_gaussian(n, n, rng))
            })
            .collect();
        LindbladModel::new(h, jumps).expect("random model satisfies invariants")
    }

    /// Full-rank random state `G G† / Tr(G G†)`.
    pub fn density_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
        let g = complex_gaussian(n, n, rng);
        let p = g.matmul(&g.adjoint());
        let tr = p.trace().re;
        let m = p.scale_real(1.0 / tr);
        // Exact hermiticity, so validation only sees rounding in the trace.
        DensityMatrix {
            matrix: (&m + &m.adjoint()).scale_real(0.5),
        }
    }

    /// Arbitrary complex matrix with Gaussian entries (not a valid state).
    pub fn matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
        complex_gaussian(n, n, rng)
    }
}
