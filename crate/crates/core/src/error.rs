use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which density-matrix invariant a state violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateInvariant {
    Hermiticity,
    Trace,
    Positivity,
}

impl fmt::Display for StateInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateInvariant::Hermiticity => "hermiticity",
            StateInvariant::Trace => "unit trace",
            StateInvariant::Positivity => "positivity",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("expected {expected} entries, found {found}")]
    DataLength { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {}x{}, found {}x{}", expected.0, expected.1, found.0, found.1)]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("vector length {len} is not {n}^2")]
    NotSquareLength { len: usize, n: usize },

    #[error("matrix is singular to working precision (pivot {pivot} at column {col})")]
    Singular { col: usize, pivot: f64 },
    #[error("matrix exponential overflowed (1-norm of M*t = {norm:e})")]
    Overflow { norm: f64 },
    #[error("exponential action did not converge: last term ratio {residual:e} after {steps} steps")]
    ActionNotConverged { residual: f64, steps: usize },
    #[error("QR iteration failed to converge after {iterations} iterations ({unconverged} eigenvalues left)")]
    EigenNotConverged { iterations: usize, unconverged: usize },
    #[error("eigenpair {index} has residual {residual:e}, above {bound:e}")]
    InaccurateEigenpair { index: usize, residual: f64, bound: f64 },

    #[error("hamiltonian is not hermitian: ||H - H^dag|| = {defect:e}")]
    NonHermitianHamiltonian { defect: f64 },
    #[error("jump {index} has invalid rate {rate}")]
    InvalidRate { index: usize, rate: f64 },
    #[error("state violates {invariant}: deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    InvalidState {
        invariant: StateInvariant,
        deviation: f64,
        tolerance: f64,
    },
    #[error("initial state has zero norm")]
    ZeroState,
    #[error("invalid time grid: {0}")]
    InvalidTimes(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operator basis is linearly dependent (gram condition {condition:e})")]
    DependentBasis { condition: f64 },
    #[error("operator set not closed: L^dag X_{index} leaves the span with residual {residual:e} (relative {relative:e})")]
    NotClosed {
        index: usize,
        residual: f64,
        relative: f64,
    },
    #[error("operator is not in the span of the basis (relative residual {relative:e})")]
    NotInSpan { relative: f64 },
    #[error("spectrum is defective (eigenvector condition {condition:e}); use a degeneracy report instead")]
    DefectiveSpectrum { condition: f64 },

    #[error("unknown {kind} '{value}'")]
    UnknownTag { kind: &'static str, value: String },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed input rather than numerical trouble.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::Singular { .. }
                | Error::Overflow { .. }
                | Error::ActionNotConverged { .. }
                | Error::EigenNotConverged { .. }
                | Error::InaccurateEigenpair { .. }
                | Error::NotClosed { .. }
                | Error::NotInSpan { .. }
                | Error::DependentBasis { .. }
                | Error::DefectiveSpectrum { .. }
        )
    }
}
