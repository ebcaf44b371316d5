//! Command-line front end. The binary only parses arguments and maps errors
//! to exit codes; everything else lives here so it can be driven in-process.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::bench::{self, BenchConfig, BenchMethod};
use crate::analysis::degeneracy::{self, DegeneracyReport};
use crate::arnoldi::arnoldi_reduce;
use crate::error::{Error, Result};
use crate::heisenberg::{self, close_set, matrix_unit_basis};
use crate::io;
use crate::linalg::{sort_complex, ComplexMatrix, C64};
use crate::model::{trace_of_product, DensityMatrix, LindbladModel};
use crate::tls::{self, TlsParams, BASIS_LABELS};
use crate::vectorize::{self, build_superoperator, PropagationMethod};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Exit status for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_NUMERICAL
    }
}

#[derive(Debug, Parser)]
#[command(name = "lindblad", version, about = "Lindblad dynamics as matrix-vector linear systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the n²×n² generator matrix (column-stacking convention).
    Superop {
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print eigenvalues as `re,im` lines, sorted by real then imaginary part.
    Spectrum {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = SpectrumMethod::Vec)]
        method: SpectrumMethod,
        #[command(flatten)]
        reduction: ReductionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write expectation-value trajectories as CSV.
    Propagate {
        model: PathBuf,
        state: PathBuf,
        observables: PathBuf,
        #[arg(long, value_enum, default_value_t = PropagateMethod::Vec)]
        method: PropagateMethod,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = 1.0)]
        t1: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long)]
        krylov_dim: Option<usize>,
        /// Operator basis for the Heisenberg method (defaults to matrix units).
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cluster eigenvalues and flag a defective spectrum.
    Degeneracy {
        model: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        cluster_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the propagation methods over random models of growing dimension.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 8, 16])]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = ["full-diagonalization".to_string(), "full-expm".to_string(), "expm-action".to_string()])]
        methods: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        repetitions: usize,
        /// Per-cell budget in seconds for the first run.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        /// CSV destination (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the driven two-level model file.
    Tls {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        detuning: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        drive: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        decay: f64,
        /// Use the exceptional-point detuning and drive for the given decay.
        #[arg(long)]
        exceptional_point: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ReductionArgs {
    /// Initial state for the Arnoldi method.
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long)]
    pub krylov_dim: Option<usize>,
    /// Operator basis for the Heisenberg method.
    #[arg(long)]
    pub basis: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumMethod {
    Vec,
    Arnoldi,
    Heisenberg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PropagateMethod {
    /// Dense exponential of the superoperator.
    Vec,
    /// Exponential action on the vectorized state.
    VecAction,
    Arnoldi,
    Heisenberg,
}

/// Runs a parsed command, writing data to `stdout` unless `--out` is given.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Superop { model, out } => {
            let (model, _) = io::read_model(&model)?;
            with_output(out.as_deref(), stdout, |w| write_superop(w, &model))
        }
        Command::Spectrum {
            model,
            method,
            reduction,
            out,
        } => {
            let (model, _) = io::read_model(&model)?;
            let values = spectrum(&model, method, &reduction)?;
            with_output(out.as_deref(), stdout, |w| write_spectrum(w, &values))
        }
        Command::Propagate {
            model,
            state,
            observables,
            method,
            t0,
            t1,
            steps,
            krylov_dim,
            basis,
            out,
        } => {
            let (model, _) = io::read_model(&model)?;
            let (rho0, _) = io::read_state(&state)?;
            rho0.matrix().require_dim(model.dim())?;
            let obs = io::read_operators(&observables, model.dim())?;
            let basis = basis.map(|p| io::read_operators(&p, model.dim())).transpose()?;
            let times = time_grid(t0, t1, steps)?;
            let rows = trajectories(&model, &rho0, &obs, &times, method, krylov_dim, basis)?;
            with_output(out.as_deref(), stdout, |w| write_trajectories(w, &obs, &times, &rows))
        }
        Command::Degeneracy {
            model,
            cluster_tol,
            out,
        } => {
            if !(cluster_tol > 0.0 && cluster_tol.is_finite()) {
                return Err(Error::InvalidParameter("cluster tolerance must be positive".into()));
            }
            let (model, _) = io::read_model(&model)?;
            let report = degeneracy::detect_degeneracy(&build_superoperator(&model), cluster_tol)?;
            with_output(out.as_deref(), stdout, |w| write_degeneracy(w, &report))
        }
        Command::Bench {
            dims,
            methods,
            seed,
            repetitions,
            timeout,
            out,
        } => {
            if !(timeout >= 0.0 && timeout.is_finite()) {
                return Err(Error::InvalidParameter("timeout must be a non-negative number".into()));
            }
            let config = BenchConfig {
                dims,
                methods: methods.iter().map(|m| m.parse()).collect::<Result<Vec<BenchMethod>>>()?,
                seed,
                repetitions,
                timeout: Duration::from_secs_f64(timeout),
                ..BenchConfig::default()
            };
            let records = bench::run_benchmark(&config)?;
            let slopes = bench::format_slopes(&bench::fit_slopes(&records));
            match out {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(path)?);
                    bench::write_csv(&mut w, &records)?;
                    w.flush()?;
                    stdout.write_all(slopes.as_bytes())?;
                }
                None => {
                    bench::write_csv(&mut *stdout, &records)?;
                    eprint!("{slopes}");
                }
            }
            Ok(())
        }
        Command::Tls {
            detuning,
            drive,
            decay,
            exceptional_point,
            out,
        } => {
            let params = if exceptional_point {
                TlsParams::new(0.0, 0.0, decay)?;
                TlsParams::exceptional_point(decay)
            } else {
                TlsParams::new(detuning, drive, decay)?
            };
            let model = tls::build_tls(params);
            let file = io::ModelFile::from_model(&model, BASIS_LABELS.iter().map(|s| s.to_string()).collect())?;
            let text = serde_json::to_string_pretty(&file)?;
            with_output(out.as_deref(), stdout, |w| Ok(writeln!(w, "{text}")?))
        }
    }
}

fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

/// `steps` equal intervals from `t0` to `t1`; a single point when they are
/// equal.
pub fn time_grid(t0: f64, t1: f64, steps: usize) -> Result<Vec<f64>> {
    if !(t0.is_finite() && t1.is_finite()) || t0 < 0.0 || t1 < t0 {
        return Err(Error::InvalidTimes(format!("need 0 <= t0 <= t1, got t0 = {t0}, t1 = {t1}")));
    }
    if steps == 0 {
        return Err(Error::InvalidTimes("steps must be at least 1".into()));
    }
    if t0 == t1 {
        return Ok(vec![t0]);
    }
    let dt = (t1 - t0) / steps as f64;
    Ok((0..=steps)
        .map(|k| if k == steps { t1 } else { t0 + k as f64 * dt })
        .collect())
}

fn write_superop(w: &mut dyn Write, model: &LindbladModel) -> Result<()> {
    let l = build_superoperator(model);
    let n = model.dim();
    writeln!(w, "# {}x{} generator, vec index of entry (a, b) is b*{n} + a", n * n, n * n)?;
    let m = l.matrix();
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|z| format!("{},{}", z.re, z.im)).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

fn require<'a, T>(value: &'a Option<T>, flag: &str, method: &str) -> Result<&'a T> {
    value
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required for method {method}")))
}

/// Eigenvalues by the chosen representation, sorted; Heisenberg values are
/// conjugated so all methods are directly comparable.
pub fn spectrum(model: &LindbladModel, method: SpectrumMethod, args: &ReductionArgs) -> Result<Vec<C64>> {
    let mut values = match method {
        SpectrumMethod::Vec => vectorize::spectrum(&build_superoperator(model))?.eigenvalues,
        SpectrumMethod::Arnoldi => {
            let (rho0, _) = io::read_state(require(&args.state, "state", "arnoldi")?)?;
            rho0.matrix().require_dim(model.dim())?;
            let k = args.krylov_dim.unwrap_or(model.dim() * model.dim() - 1);
            arnoldi_reduce(model, rho0.matrix(), k)?.ritz_values()?.eigenvalues
        }
        SpectrumMethod::Heisenberg => {
            let basis = match &args.basis {
                Some(p) => io::read_operators(p, model.dim())?.into_iter().map(|(_, m)| m).collect(),
                None => matrix_unit_basis(model.dim()),
            };
            let rep = close_set(model, &basis)?;
            heisenberg::adjoint_spectrum(&rep)?
                .eigenvalues
                .into_iter()
                .map(|z| z.conj())
                .collect()
        }
    };
    sort_complex(&mut values);
    Ok(values)
}

fn write_spectrum(w: &mut dyn Write, values: &[C64]) -> Result<()> {
    for z in values {
        writeln!(w, "{},{}", z.re, z.im)?;
    }
    Ok(())
}

/// Row `k` holds `Tr(Oⱼ ρ(tₖ))` for each observable `Oⱼ`.
pub fn trajectories(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    observables: &[(String, ComplexMatrix)],
    times: &[f64],
    method: PropagateMethod,
    krylov_dim: Option<usize>,
    basis: Option<Vec<(String, ComplexMatrix)>>,
) -> Result<Vec<Vec<C64>>> {
    let readout = |states: Vec<ComplexMatrix>| -> Vec<Vec<C64>> {
        states
            .iter()
            .map(|rho| observables.iter().map(|(_, x)| trace_of_product(x, rho)).collect())
            .collect()
    };
    match method {
        PropagateMethod::Vec | PropagateMethod::VecAction => {
            let how = if method == PropagateMethod::Vec {
                PropagationMethod::Dense
            } else {
                PropagationMethod::Action
            };
            let l = build_superoperator(model);
            Ok(readout(vectorize::propagate_matrix(&l, rho0.matrix(), times, how)?))
        }
        PropagateMethod::Arnoldi => {
            let k = krylov_dim.unwrap_or(model.dim() * model.dim() - 1);
            let red = arnoldi_reduce(model, rho0.matrix(), k)?;
            Ok(readout(red.propagate(times)?))
        }
        PropagateMethod::Heisenberg => {
            let basis: Vec<ComplexMatrix> = match basis {
                Some(b) => b.into_iter().map(|(_, m)| m).collect(),
                None => matrix_unit_basis(model.dim()),
            };
            let rep = close_set(model, &basis)?;
            let coeffs = observables
                .iter()
                .map(|(_, x)| rep.decompose(x))
                .collect::<Result<Vec<_>>>()?;
            let r0 = heisenberg::expectations(&basis, rho0)?;
            let path = heisenberg::propagate_expectations(&rep, &r0, times)?;
            Ok(path
                .iter()
                .map(|r| {
                    coeffs
                        .iter()
                        .map(|c| c.iter().zip(r.values.iter()).map(|(a, b)| a * b).sum())
                        .collect()
                })
                .collect())
        }
    }
}

fn write_trajectories(
    w: &mut dyn Write,
    observables: &[(String, ComplexMatrix)],
    times: &[f64],
    rows: &[Vec<C64>],
) -> Result<()> {
    let mut header = String::from("t");
    for (label, _) in observables {
        header.push_str(&format!(",{label}_re,{label}_im"));
    }
    writeln!(w, "{header}")?;
    for (t, row) in times.iter().zip(rows) {
        let mut line = format!("{t}");
        for z in row {
            line.push_str(&format!(",{},{}", z.re, z.im));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

fn write_degeneracy(w: &mut dyn Write, report: &DegeneracyReport) -> Result<()> {
    let verdict = if report.defective_flag {
        "defective"
    } else {
        "not defective"
    };
    for c in &report.clusters {
        write!(
            w,
            "cluster size {} at ({:.4}, {:.4})",
            c.len(),
            c.center.re,
            c.center.im + 0.0
        )?;
        if c.len() > 1 {
            write!(w, ", diameter {:.1e}, {verdict}", c.diameter)?;
        }
        writeln!(w)?;
    }
    writeln!(w, "eigenvector condition {:.3e}, {verdict}", report.eigenvector_condition)?;
    Ok(())
}
