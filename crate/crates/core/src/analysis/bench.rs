//! Wall-clock scaling of the propagation routes with Hilbert-space dimension.
//!
//! Every method computes `ρ(t)` for the same random model and start state.
//! Errors are Hilbert-Schmidt distances to a dense `e^{Lt}` reference at the
//! same dimension.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arnoldi::arnoldi_reduce;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector};
use crate::model::{random, DensityMatrix, LindbladModel};
use crate::vectorize::{self, build_superoperator, unvec, PropagationMethod, Superoperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BenchMethod {
    /// Diagonalize `L` and exponentiate the eigenvalues.
    FullDiagonalization,
    /// Dense `e^{Lt}` by scaling and squaring.
    FullExpm,
    /// `e^{Lt} vec(ρ₀)` by matrix-vector products.
    ExpmAction,
    /// Krylov reduction with the given dimension (capped at `n² − 1`).
    Arnoldi(usize),
}

impl BenchMethod {
    pub const ALL_DENSE: [BenchMethod; 3] = [Self::FullDiagonalization, Self::FullExpm, Self::ExpmAction];
}

impl fmt::Display for BenchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FullDiagonalization => f.write_str("full-diagonalization"),
            Self::FullExpm => f.write_str("full-expm"),
            Self::ExpmAction => f.write_str("expm-action"),
            Self::Arnoldi(k) => write!(f, "arnoldi-{k}"),
        }
    }
}

impl FromStr for BenchMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-diagonalization" => Ok(Self::FullDiagonalization),
            "full-expm" => Ok(Self::FullExpm),
            "expm-action" => Ok(Self::ExpmAction),
            _ => s
                .strip_prefix("arnoldi-")
                .and_then(|k| k.parse().ok())
                .map(Self::Arnoldi)
                .ok_or_else(|| Error::UnknownTag {
                    kind: "benchmark method",
                    value: s.to_string(),
                }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchStatus {
    Ok,
    /// The first run exceeded the per-cell budget; no repetitions were made.
    Timeout,
    /// Not run because a smaller dimension timed out.
    Skipped,
    /// The method raised a numerical error.
    Failed,
}

impl fmt::Display for BenchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ok => "ok",
            Self::Timeout => "timeout",
            Self::Skipped => "skipped",
            Self::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub method: BenchMethod,
    /// Median seconds per run; NaN when skipped or failed.
    pub wall_time: f64,
    /// `‖ρ_method − ρ_reference‖_HS`; NaN when skipped or failed.
    pub result_error: f64,
    pub status: BenchStatus,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub dims: Vec<usize>,
    pub methods: Vec<BenchMethod>,
    pub seed: u64,
    /// Timed runs per cell, after one discarded warm-up.
    pub repetitions: usize,
    /// Budget for the warm-up run of a cell.
    pub timeout: Duration,
    /// Propagation time.
    pub time: f64,
    /// Jump operators per random model.
    pub jumps: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 4, 8, 16],
            methods: BenchMethod::ALL_DENSE.to_vec(),
            seed: 0,
            repetitions: 5,
            timeout: Duration::from_secs(60),
            time: 1.0,
            jumps: 2,
        }
    }
}

struct Problem {
    model: LindbladModel,
    superop: Superoperator,
    rho0: DensityMatrix,
    time: f64,
}

fn diagonalization(p: &Problem) -> Result<ComplexMatrix> {
    let dec = vectorize::spectrum(&p.superop)?;
    let v = &dec.right_eigenvectors;
    let w = linalg::inverse(v)?.matvec(&vectorize::vec(p.rho0.matrix()));
    let scaled: ComplexVector = w
        .iter()
        .zip(&dec.eigenvalues)
        .map(|(c, l)| c * (l * p.time).exp())
        .collect();
    unvec(&v.matvec(&scaled), p.model.dim())
}

fn solve(p: &Problem, method: BenchMethod) -> Result<ComplexMatrix> {
    let times = [p.time];
    match method {
        BenchMethod::FullDiagonalization => diagonalization(p),
        BenchMethod::FullExpm => {
            Ok(vectorize::propagate_matrix(&p.superop, p.rho0.matrix(), &times, PropagationMethod::Dense)?.remove(0))
        }
        BenchMethod::ExpmAction => {
            Ok(vectorize::propagate_matrix(&p.superop, p.rho0.matrix(), &times, PropagationMethod::Action)?.remove(0))
        }
        BenchMethod::Arnoldi(k) => Ok(arnoldi_reduce(&p.model, p.rho0.matrix(), k)?.propagate(&times)?.remove(0)),
    }
}

fn timed(p: &Problem, method: BenchMethod) -> (Duration, Result<ComplexMatrix>) {
    let start = Instant::now();
    let out = solve(p, method);
    (start.elapsed(), out)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Runs every `(n, method)` cell; records come out ordered by `n`, then by
/// the order of `config.methods`.
pub fn run_benchmark(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if let Some(&n) = config.dims.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidParameter(format!("benchmark dimension {n} is below 2")));
    }
    if config.methods.is_empty() {
        return Err(Error::InvalidParameter("no benchmark methods".into()));
    }
    if config.repetitions == 0 {
        return Err(Error::InvalidParameter("repetitions must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut timed_out = vec![false; config.methods.len()];
    let mut records = Vec::new();

    for &n in &config.dims {
        let model = random::model(n, config.jumps, &mut rng);
        let rho0 = random::density_matrix(n, &mut rng);
        let superop = build_superoperator(&model);
        let problem = Problem {
            model,
            superop,
            rho0,
            time: config.time,
        };

        let mut results: Vec<Option<ComplexMatrix>> = Vec::with_capacity(config.methods.len());
        let mut cells = Vec::with_capacity(config.methods.len());
        for (slot, &method) in config.methods.iter().enumerate() {
            if timed_out[slot] {
                results.push(None);
                cells.push((method, f64::NAN, BenchStatus::Skipped));
                continue;
            }
            let (first, out) = timed(&problem, method);
            let Ok(rho) = out else {
                results.push(None);
                cells.push((method, f64::NAN, BenchStatus::Failed));
                continue;
            };
            if first > config.timeout {
                timed_out[slot] = true;
                results.push(Some(rho));
                cells.push((method, first.as_secs_f64(), BenchStatus::Timeout));
                continue;
            }
            let runs: Vec<f64> = (0..config.repetitions)
                .map(|_| timed(&problem, method).0.as_secs_f64())
                .collect();
            results.push(Some(rho));
            cells.push((method, median(runs), BenchStatus::Ok));
        }

        let reference = match config
            .methods
            .iter()
            .zip(&results)
            .find(|(m, r)| **m == BenchMethod::FullExpm && r.is_some())
        {
            Some((_, r)) => r.clone().unwrap(),
            None => solve(&problem, BenchMethod::FullExpm)?,
        };
        for ((method, wall_time, status), rho) in cells.into_iter().zip(results) {
            let result_error = rho.map_or(f64::NAN, |r| (&r - &reference).norm_fro());
            records.push(BenchRecord {
                n,
                method,
                wall_time,
                result_error,
                status,
            });
        }
    }
    Ok(records)
}

/// Least-squares slope of `ln(wall_time)` against `ln(n)` per method, over
/// cells with status `ok`. `None` when fewer than two dimensions completed.
pub fn fit_slopes(records: &[BenchRecord]) -> Vec<(BenchMethod, Option<f64>)> {
    let mut methods: Vec<BenchMethod> = Vec::new();
    for r in records {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    methods
        .into_iter()
        .map(|m| {
            let pts: Vec<(f64, f64)> = records
                .iter()
                .filter(|r| r.method == m && r.status == BenchStatus::Ok && r.wall_time > 0.0)
                .map(|r| ((r.n as f64).ln(), r.wall_time.ln()))
                .collect();
            (m, slope(&pts))
        })
        .collect()
}

fn slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub const CSV_HEADER: &str = "n,method,wall_time_s,result_error,status";

pub fn write_csv<W: Write>(mut out: W, records: &[BenchRecord]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{:e},{:e},{}",
            r.n, r.method, r.wall_time, r.result_error, r.status
        )?;
    }
    Ok(())
}

/// One `slope <method> <value>` line per method.
pub fn format_slopes(slopes: &[(BenchMethod, Option<f64>)]) -> String {
    slopes
        .iter()
        .map(|(m, s)| match s {
            Some(s) => format!("slope {m} {s:.3}\n"),
            None => format!("slope {m} n/a\n"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(dims: Vec<usize>, methods: Vec<BenchMethod>) -> BenchConfig {
        BenchConfig {
            dims,
            methods,
            seed: 7,
            repetitions: 1,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn method_tags_round_trip() {
        for m in [
            BenchMethod::FullDiagonalization,
            BenchMethod::FullExpm,
            BenchMethod::ExpmAction,
            BenchMethod::Arnoldi(12),
        ] {
            assert_eq!(m.to_string().parse::<BenchMethod>().unwrap(), m);
        }
        assert!("arnoldi-x".parse::<BenchMethod>().is_err());
        assert!("krylov".parse::<BenchMethod>().is_err());
    }

    #[test]
    fn small_dimension_methods_agree() {
        let mut methods = BenchMethod::ALL_DENSE.to_vec();
        methods.push(BenchMethod::Arnoldi(3));
        let recs = run_benchmark(&quick(vec![2], methods)).unwrap();
        assert_eq!(recs.len(), 4);
        for r in &recs {
            assert_eq!(r.status, BenchStatus::Ok);
            assert!(r.wall_time > 0.0);
            assert!(r.result_error <= 1e-9, "{r:?}");
        }
    }

    #[test]
    fn one_row_per_cell() {
        let recs = run_benchmark(&quick(vec![3, 4], BenchMethod::ALL_DENSE.to_vec())).unwrap();
        assert_eq!(recs.len(), 6);
        assert_eq!(recs.iter().filter(|r| r.n == 4).count(), 3);
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(text.lines().count(), 7);
    }

    #[test]
    fn timeout_skips_larger_dimensions() {
        let mut cfg = quick(vec![2, 3, 4], vec![BenchMethod::ExpmAction]);
        cfg.timeout = Duration::ZERO;
        let recs = run_benchmark(&cfg).unwrap();
        assert_eq!(recs[0].status, BenchStatus::Timeout);
        assert!(recs[0].result_error < 1e-9);
        assert!(recs[1..].iter().all(|r| r.status == BenchStatus::Skipped && r.wall_time.is_nan()));
    }

    #[test]
    fn trivial_model_returns_initial_state() {
        let rho0 = DensityMatrix::maximally_mixed(3);
        let model = LindbladModel::trivial(3);
        let problem = Problem {
            superop: build_superoperator(&model),
            model,
            rho0: rho0.clone(),
            time: 1.0,
        };
        for m in [
            BenchMethod::FullDiagonalization,
            BenchMethod::FullExpm,
            BenchMethod::ExpmAction,
            BenchMethod::Arnoldi(4),
        ] {
            assert_eq!(&solve(&problem, m).unwrap(), rho0.matrix(), "{m}");
        }
    }

    #[test]
    fn rejects_bad_config() {
        assert!(run_benchmark(&quick(vec![1], vec![BenchMethod::FullExpm])).is_err());
        assert!(run_benchmark(&quick(vec![2], vec![])).is_err());
    }

    #[test]
    fn slope_of_power_law() {
        let recs: Vec<BenchRecord> = [2usize, 4, 8]
            .iter()
            .map(|&n| BenchRecord {
                n,
                method: BenchMethod::FullExpm,
                wall_time: 1e-3 * (n as f64).powi(3),
                result_error: 0.0,
                status: BenchStatus::Ok,
            })
            .collect();
        let s = fit_slopes(&recs);
        assert!((s[0].1.unwrap() - 3.0).abs() < 1e-12);
    }
}
