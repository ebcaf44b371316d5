//! Dense complex linear algebra: Kronecker and Hilbert-Schmidt products,
//! matrix exponentials and a general non-Hermitian eigensolver.
//!
//! All routines are pure functions of their inputs.

mod eig;
mod expm;
mod expm_action;
mod lu;
mod matrix;
mod products;

pub use eig::{eig, eig_with_tolerance, eigenvalues, sort_complex, spectral_distance, EigenDecomposition};
pub use expm::expm;
pub use expm_action::{expm_action, expm_action_tol, ACTION_TOL};
pub use lu::{condition_one, inverse, solve, Lu};
pub use matrix::{ComplexMatrix, ComplexVector, C64};
pub use products::{anticommutator, commutator, hs_inner, hs_norm, kron};

pub(crate) use matrix::{I, ONE, ZERO};
pub(crate) use products::hs_inner_unchecked;

/// Default tolerance for identities that hold exactly in real arithmetic.
pub const ARITHMETIC_TOL: f64 = 1e-12;
/// Default tolerance for results of iterative algorithms.
pub const ITERATIVE_TOL: f64 = 1e-9;

/// Tolerance configuration shared by the numerical modules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub arithmetic: f64,
    pub iterative: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            arithmetic: ARITHMETIC_TOL,
            iterative: ITERATIVE_TOL,
        }
    }
}
