//! The driven two-level system with spontaneous emission, in the frame
//! rotating at the drive frequency:
//!
//! ```text
//! H = Δ Sz + ε Sx,   single jump S₋ at rate γ
//! ```
//!
//! Basis order is `(|e⟩, |g⟩)`, so `Sz = diag(½, −½)` and `S₋ = |g⟩⟨e|`.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::model::LindbladModel;

pub const BASIS_LABELS: [&str; 2] = ["e", "g"];

/// Detuning, drive amplitude and decay rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TlsParams {
    pub detuning: f64,
    pub drive: f64,
    pub decay: f64,
}

impl TlsParams {
    pub fn new(detuning: f64, drive: f64, decay: f64) -> Result<Self> {
        if !(detuning.is_finite() && drive.is_finite() && decay.is_finite()) {
            return Err(Error::InvalidParameter("TLS parameters must be finite".into()));
        }
        if decay < 0.0 {
            return Err(Error::InvalidRate { index: 0, rate: decay });
        }
        Ok(Self {
            detuning,
            drive,
            decay,
        })
    }

    /// The third-order exceptional point `Δ = γ/√108`, `ε = γ√(8/108)`.
    pub fn exceptional_point(decay: f64) -> Self {
        Self {
            detuning: (1.0f64 / 108.0).sqrt() * decay,
            drive: (8.0f64 / 108.0).sqrt() * decay,
            decay,
        }
    }
}

pub fn build_tls(params: TlsParams) -> LindbladModel {
    let mut h = sz().scale_real(params.detuning);
    h.axpy(C64::new(params.drive, 0.0), &sx());
    LindbladModel::new(h, vec![(params.decay, s_minus())]).expect("TLS model is valid by construction")
}

fn half(rows: [[C64; 2]; 2]) -> ComplexMatrix {
    ComplexMatrix::from_rows(&rows).unwrap().scale_real(0.5)
}

const O: C64 = C64::new(0.0, 0.0);
const R: C64 = C64::new(1.0, 0.0);
const J: C64 = C64::new(0.0, 1.0);

pub fn sx() -> ComplexMatrix {
    half([[O, R], [R, O]])
}

pub fn sy() -> ComplexMatrix {
    half([[O, -J], [J, O]])
}

pub fn sz() -> ComplexMatrix {
    half([[R, O], [O, -R]])
}

/// `S₊ = Sx + iSy = |e⟩⟨g|`.
pub fn s_plus() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[O, R], [O, O]]).unwrap()
}

/// `S₋ = Sx − iSy = |g⟩⟨e|`.
pub fn s_minus() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[O, O], [R, O]]).unwrap()
}

/// `{Sx, Sy, Sz, I}` with labels.
pub fn spin_basis() -> Vec<(String, ComplexMatrix)> {
    vec![
        ("sx".into(), sx()),
        ("sy".into(), sy()),
        ("sz".into(), sz()),
        ("id".into(), ComplexMatrix::identity(2)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::commutator;

    #[test]
    fn spin_algebra() {
        let i = C64::new(0.0, 1.0);
        assert!(commutator(&sx(), &sy()).max_abs_diff(&sz().scale(i)) < 1e-16);
        assert!(commutator(&sy(), &sz()).max_abs_diff(&sx().scale(i)) < 1e-16);
        assert!(commutator(&sz(), &sx()).max_abs_diff(&sy().scale(i)) < 1e-16);
        let mut sp = sx();
        sp.axpy(i, &sy());
        assert_eq!(sp, s_plus());
        let mut sm = sx();
        sm.axpy(-i, &sy());
        assert_eq!(sm, s_minus());
    }

    #[test]
    fn negative_decay_rejected() {
        assert!(TlsParams::new(0.0, 0.0, -1.0).is_err());
        assert!(TlsParams::new(f64::NAN, 0.0, 1.0).is_err());
    }

    #[test]
    fn all_zero_parameters_give_zero_generator() {
        let model = build_tls(TlsParams::new(0.0, 0.0, 0.0).unwrap());
        let rho = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(i as f64 + 1.0, j as f64));
        assert_eq!(model.apply_generator(&rho).unwrap().max_abs(), 0.0);
    }
}
