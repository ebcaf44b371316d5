//! Krylov reduction of the generator in Liouville space.
//!
//! Starting from `ρ̂₀ = ρ₀ / ‖ρ₀‖`, each step applies `L` as an `n × n`
//! matrix operation, removes the projections on the previous basis elements
//! (modified Gram-Schmidt) and normalizes by the positive Hilbert-Schmidt norm
//! of the remainder. The coefficients form an upper Hessenberg matrix
//! `Lᵢⱼ = Tr(ρ̂ᵢ† L ρ̂ⱼ)`, which is the generator restricted to the Krylov
//! space. The `n² × n²` superoperator is never formed.

use crate::error::{Error, Result};
use crate::linalg::{self, hs_inner_unchecked, ComplexMatrix, ComplexVector, EigenDecomposition, C64, ONE, ZERO};
use crate::model::LindbladModel;
use crate::vectorize::check_times;

/// A residual below this fraction of `‖L ρ̂₀‖` ends the iteration.
pub const BREAKDOWN_TOL: f64 = 1e-12;
/// Loss of orthogonality that triggers a second Gram-Schmidt pass.
pub const REORTHOGONALIZE_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct KrylovReduction {
    basis: Vec<ComplexMatrix>,
    hessenberg: ComplexMatrix,
    breakdown_at: Option<usize>,
    model_dim: usize,
    initial_norm: f64,
}

/// Coefficients `r` of `Σ rᵢ ρ̂ᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedState {
    pub coefficients: ComplexVector,
}

/// Builds the orthonormal basis `ρ̂₀ … ρ̂_K` and the `(K+1) × (K+1)`
/// Hessenberg matrix. `krylov_dim` is capped at `n² − 1`; on breakdown at
/// step `j` the basis has `j + 1` elements.
pub fn arnoldi_reduce(model: &LindbladModel, rho0: &ComplexMatrix, krylov_dim: usize) -> Result<KrylovReduction> {
    let n = model.dim();
    rho0.require_dim(n)?;
    let initial_norm = rho0.norm_fro();
    if initial_norm == 0.0 {
        return Err(Error::ZeroState);
    }
    let k = krylov_dim.min(n * n - 1);

    let mut basis = vec![rho0.scale_real(1.0 / initial_norm)];
    let mut h = ComplexMatrix::zeros(k + 1, k + 1);
    let mut reference = 0.0;
    let mut breakdown_at = None;

    for j in 0..=k {
        let mut w = model.generator(&basis[j]);
        if j == 0 {
            reference = w.norm_fro();
        }
        for (i, q) in basis.iter().enumerate() {
            let hij = hs_inner_unchecked(q, &w);
            h[(i, j)] = hij;
            w.axpy(-hij, q);
        }

        let corrections: Vec<C64> = basis.iter().map(|q| hs_inner_unchecked(q, &w)).collect();
        let loss = corrections.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if loss > REORTHOGONALIZE_TOL * w.norm_fro() {
            for (i, (q, c)) in basis.iter().zip(corrections).enumerate() {
                h[(i, j)] += c;
                w.axpy(-c, q);
            }
        }

        if j == k {
            break;
        }
        let beta = w.norm_fro();
        if beta <= BREAKDOWN_TOL * reference {
            breakdown_at = Some(j);
            h = ComplexMatrix::from_fn(j + 1, j + 1, |r, c| h[(r, c)]);
            break;
        }
        h[(j + 1, j)] = C64::new(beta, 0.0);
        basis.push(w.scale_real(1.0 / beta));
    }

    Ok(KrylovReduction {
        basis,
        hessenberg: h,
        breakdown_at,
        model_dim: n,
        initial_norm,
    })
}

impl KrylovReduction {
    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn hessenberg(&self) -> &ComplexMatrix {
        &self.hessenberg
    }

    pub fn breakdown_at(&self) -> Option<usize> {
        self.breakdown_at
    }

    pub fn model_dim(&self) -> usize {
        self.model_dim
    }

    /// Number of basis elements, `K + 1` unless the iteration broke down.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `‖ρ₀‖`, the factor removed when forming `ρ̂₀`.
    pub fn initial_norm(&self) -> f64 {
        self.initial_norm
    }

    /// `max |Tr(ρ̂ᵢ† ρ̂ⱼ) − δᵢⱼ|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((hs_inner_unchecked(a, b) - target).norm());
            }
        }
        worst
    }

    /// `rᵢ = Tr(ρ̂ᵢ† ρ)`.
    pub fn project(&self, rho: &ComplexMatrix) -> Result<ReducedState> {
        rho.require_dim(self.model_dim)?;
        let coefficients = self.basis.iter().map(|q| hs_inner_unchecked(q, rho)).collect();
        Ok(ReducedState { coefficients })
    }

    /// `Σ rᵢ ρ̂ᵢ`.
    pub fn reconstruct(&self, r: &ReducedState) -> Result<ComplexMatrix> {
        if r.coefficients.len() != self.basis.len() {
            return Err(Error::DimensionMismatch {
                expected: (self.basis.len(), 1),
                found: (r.coefficients.len(), 1),
            });
        }
        let mut out = ComplexMatrix::zeros(self.model_dim, self.model_dim);
        for (q, &c) in self.basis.iter().zip(r.coefficients.iter()) {
            out.axpy(c, q);
        }
        Ok(out)
    }

    /// `r(t) = e^{Ht} e₀`, the reduced coordinates of the evolved `ρ̂₀`.
    pub fn reduced_at(&self, t: f64) -> Result<ReducedState> {
        check_times(&[t])?;
        let e0 = ComplexVector::unit(self.basis.len(), 0);
        let coefficients = linalg::expm(&self.hessenberg, t)?.matvec(&e0);
        Ok(ReducedState { coefficients })
    }

    /// The evolved normalized start vector `e^{Lt} ρ̂₀`, reconstructed.
    pub fn propagate_reduced(&self, t: f64) -> Result<ComplexMatrix> {
        self.reconstruct(&self.reduced_at(t)?)
    }

    /// `ρ(t)` for the original, unnormalized `ρ₀` at each time.
    pub fn propagate(&self, times: &[f64]) -> Result<Vec<ComplexMatrix>> {
        check_times(times)?;
        times
            .iter()
            .map(|&t| Ok(self.propagate_reduced(t)?.scale_real(self.initial_norm)))
            .collect()
    }

    /// Eigenvalues of the Hessenberg matrix.
    pub fn ritz_values(&self) -> Result<EigenDecomposition> {
        linalg::eig(&self.hessenberg)
    }
}
