//! Expectation values as sums of damped oscillations.
//!
//! With `L = V Λ V⁻¹`,
//!
//! ```text
//! c(t) = Tr(X ρ(t)) = Σₘ dₘ e^{λₘ t},   dₘ = (vec(Xᵀ)ᵀ Vₘ) (V⁻¹ vec ρ₀)ₘ
//! ```

use crate::analysis::degeneracy::DEFECTIVE_CONDITION;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, C64, ZERO};
use crate::model::DensityMatrix;
use crate::vectorize::{self, Superoperator};

/// Modes with `|dₘ|` below this fraction of `Σ|d|` are dropped.
pub const PRUNE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mode {
    pub lambda: C64,
    pub amplitude: C64,
}

impl Mode {
    /// `α = −Re λ`.
    pub fn decay_rate(&self) -> f64 {
        -self.lambda.re
    }

    /// `ω = Im λ`.
    pub fn frequency(&self) -> f64 {
        self.lambda.im
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModeDecomposition {
    pub modes: Vec<Mode>,
}

impl ModeDecomposition {
    /// `Σ dₘ e^{λₘ t}`.
    pub fn evaluate(&self, t: f64) -> C64 {
        self.modes.iter().map(|m| m.amplitude * (m.lambda * t).exp()).sum()
    }

    /// `Σ dₘ`, which equals `c(0)`.
    pub fn amplitude_sum(&self) -> C64 {
        self.modes.iter().map(|m| m.amplitude).sum()
    }
}

pub fn observable_modes(superop: &Superoperator, rho0: &DensityMatrix, x: &ComplexMatrix) -> Result<ModeDecomposition> {
    let n = superop.dim_hilbert();
    rho0.matrix().require_dim(n)?;
    x.require_dim(n)?;
    let dec = vectorize::spectrum(superop)?;
    if dec.eigenvector_condition > DEFECTIVE_CONDITION {
        return Err(Error::DefectiveSpectrum {
            condition: dec.eigenvector_condition,
        });
    }
    let v = &dec.right_eigenvectors;
    let weights = linalg::inverse(v)?.matvec(&vectorize::vec(rho0.matrix()));
    let readout = vectorize::vec(&x.transpose());

    let amplitudes: Vec<C64> = (0..dec.len())
        .map(|m| {
            let overlap: C64 = (0..v.rows()).fold(ZERO, |acc, i| acc + readout[i] * v[(i, m)]);
            overlap * weights[m]
        })
        .collect();
    let total: f64 = amplitudes.iter().map(|d| d.norm()).sum();
    let mut modes: Vec<Mode> = dec
        .eigenvalues
        .iter()
        .zip(amplitudes)
        .filter(|(_, d)| d.norm() >= PRUNE_TOL * total)
        .map(|(&lambda, amplitude)| Mode { lambda, amplitude })
        .collect();
    modes.sort_by(|a, b| {
        let (x, y) = (a.lambda, b.lambda);
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
    });
    Ok(ModeDecomposition { modes })
}
