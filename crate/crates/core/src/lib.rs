//! Markovian open-system (Lindblad) dynamics as ordinary matrix-vector
//! linear systems.
//!
//! Three interchangeable representations are provided:
//!
//! - [`vectorize`]: column-stack the density matrix into an `n²` vector and
//!   build the `n² × n²` generator matrix from Kronecker products.
//! - [`arnoldi`]: orthonormalize the Krylov sequence `ρ₀, Lρ₀, L²ρ₀, …` in
//!   Liouville space using only `n × n` matrix products, giving a small upper
//!   Hessenberg matrix.
//! - [`heisenberg`]: evolve expectation values of a closed set of operators
//!   under the adjoint generator.
//!
//! On top of these, [`analysis`] extracts observable modes, detects
//! exceptional points and runs scaling benchmarks. [`io`] and [`cli`] provide
//! the JSON file formats and the command-line front end.

pub mod analysis;
pub mod arnoldi;
pub mod cli;
pub mod error;
pub mod heisenberg;
pub mod io;
pub mod linalg;
pub mod model;
pub mod tls;
pub mod vectorize;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector, EigenDecomposition, C64};
pub use model::{DensityMatrix, Jump, LindbladModel};
