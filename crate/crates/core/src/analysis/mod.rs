//! Analysis built on the three representations: observable mode
//! decomposition, eigenvalue degeneracy detection and a scaling benchmark.

pub mod bench;
pub mod degeneracy;
pub mod modes;

pub use bench::{fit_slopes, run_benchmark, write_csv, BenchConfig, BenchMethod, BenchRecord, BenchStatus};
pub use degeneracy::{cluster_eigenvalues, detect_degeneracy, Cluster, DegeneracyReport, DEFECTIVE_CONDITION};
pub use modes::{observable_modes, Mode, ModeDecomposition};
