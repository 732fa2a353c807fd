//! The `ellipsoid` command.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use ellipsoid_core::oracle::{MAX_ORACLE_CONSTRAINTS, MAX_ORACLE_DIM};
use ellipsoid_core::{
    certify, solve_traced, vertex_enumeration_check, CertDetail, LinearSystem, OracleVerdict,
    SolveError, SolveOutcome, SolverConfig,
};
use serde_json::{json, Value};

use crate::problem::parse_problem;
use crate::svg::emit_svg_trace;
use crate::trace::{write_trace, Recorder};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    Feasible = 0,
    NotFound = 1,
    InputError = 2,
    NumericalBreakdown = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Decide feasibility of a system of linear inequalities with the ellipsoid method.
#[derive(Debug, Parser)]
#[command(name = "ellipsoid", version)]
struct Cli {
    /// Problem file (JSON with "dim", "radius" and "constraints").
    #[arg(long)]
    input: PathBuf,
    /// Absolute volume threshold; defaults to 1e-8 times the initial ball's volume.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Iteration cap; defaults to ⌈2(n+1)·ln(V₀/ε)⌉.
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Relative violation tolerance; row i tolerates tol·(1+|bᵢ|).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Write one JSON trace record per visited ellipsoid.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write an SVG of the ellipse sequence (2-D problems only).
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Cross-check with the brute-force oracle (n ≤ 4, m ≤ 20).
    #[arg(long)]
    verify: bool,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Runs the command line `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { ExitStatus::InputError } else { ExitStatus::Feasible };
        }
    };
    let json = cli.output == OutputFormat::Json;
    match execute(&cli, stdout) {
        Ok(status) => status,
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            if json {
                let _ = writeln!(stdout, "{}", json!({ "status": "input_error", "message": msg }));
            }
            ExitStatus::InputError
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<ExitStatus, InputError> {
    let text = std::fs::read(&cli.input)
        .map_err(|e| InputError(format!("cannot read {}: {e}", cli.input.display())))?;
    let problem = parse_problem(&text)?;
    let sys = problem.to_system()?;
    if cli.svg.is_some() && sys.dim() != 2 {
        return Err(InputError(format!(
            "--svg needs a 2-dimensional problem, this one has n = {}",
            sys.dim()
        )));
    }

    let mut cfg = match cli.epsilon {
        Some(eps) => SolverConfig::new(eps)?,
        None => SolverConfig::for_system(&sys),
    };
    if let Some(cap) = cli.max_iter {
        cfg = cfg.with_max_iterations(cap);
    }
    if let Some(tol) = cli.tol {
        cfg = cfg.with_violation_tolerance(tol)?;
    }

    let mut recorder = Recorder::new(cli.svg.is_some());
    let result = solve_traced(&sys, &cfg, &mut recorder);

    if let Some(path) = &cli.trace {
        write_trace(&recorder.records, create(path)?)?;
    }
    if let Some(path) = &cli.svg {
        emit_svg_trace(&sys, &recorder.records, &recorder.shapes, create(path)?)?;
    }

    let outcome = match result {
        Ok(outcome) => outcome,
        Err(SolveError::Invalid(e)) => return Err(InputError(e.to_string())),
        Err(SolveError::NumericalBreakdown { iteration, cause }) => {
            let report = json!({
                "status": "numerical_breakdown",
                "iteration": iteration,
                "message": cause.to_string(),
            });
            emit(stdout, cli.output, &report)?;
            return Ok(ExitStatus::NumericalBreakdown);
        }
    };

    let mut report = outcome_report(&outcome, &sys, &cfg);
    if cli.verify {
        report["oracle"] = Value::from(oracle_agreement(&sys, &outcome));
    }
    emit(stdout, cli.output, &report)?;
    Ok(if outcome.is_feasible() { ExitStatus::Feasible } else { ExitStatus::NotFound })
}

fn create(path: &Path) -> Result<BufWriter<File>, InputError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))
}

fn outcome_report(outcome: &SolveOutcome, sys: &LinearSystem, cfg: &SolverConfig) -> Value {
    let cert = certify(outcome, sys, cfg);
    let mut report = json!({
        "dim": sys.dim(),
        "constraints": sys.constraints().len(),
        "radius": sys.radius(),
        "epsilon": cfg.epsilon(),
        "iterations": outcome.iterations(),
        "certified": cert.passed,
    });
    match (outcome, &cert.detail) {
        (SolveOutcome::Feasible { point, .. }, CertDetail::Feasible { min_slack, .. }) => {
            report["status"] = "feasible".into();
            report["point"] = point.to_vec().into();
            report["min_slack"] = if min_slack.is_finite() { (*min_slack).into() } else { Value::Null };
        }
        (
            SolveOutcome::VolumeExhausted { .. },
            CertDetail::VolumeExhausted { final_log_volume, log_epsilon, margin },
        ) => {
            report["status"] = "volume_exhausted".into();
            report["final_log_volume"] = (*final_log_volume).into();
            report["log_epsilon"] = (*log_epsilon).into();
            report["margin"] = (*margin).into();
        }
        _ => {
            report["status"] = "iteration_cap".into();
        }
    }
    report
}

fn oracle_agreement(sys: &LinearSystem, outcome: &SolveOutcome) -> &'static str {
    if sys.dim() > MAX_ORACLE_DIM || sys.constraints().len() > MAX_ORACLE_CONSTRAINTS {
        return "inconclusive";
    }
    match (vertex_enumeration_check(sys), outcome) {
        (Ok(OracleVerdict::FeasibleWitness(_)), SolveOutcome::Feasible { .. }) => "agree",
        (Ok(OracleVerdict::Infeasible), SolveOutcome::VolumeExhausted { .. }) => "agree",
        (Ok(OracleVerdict::Infeasible), SolveOutcome::Feasible { .. }) => "disagree",
        (Ok(OracleVerdict::FeasibleWitness(_)), SolveOutcome::VolumeExhausted { .. }) => "disagree",
        _ => "inconclusive",
    }
}

fn emit(stdout: &mut dyn Write, format: OutputFormat, report: &Value) -> Result<(), InputError> {
    match format {
        OutputFormat::Json => writeln!(stdout, "{report}")?,
        OutputFormat::Text => {
            let obj = report.as_object().expect("reports are objects");
            let status = obj["status"].as_str().unwrap_or("unknown").replace('_', " ");
            writeln!(stdout, "status: {status}")?;
            for (key, value) in obj {
                if key == "status" {
                    continue;
                }
                let label = key.replace('_', " ");
                match value {
                    Value::String(s) => writeln!(stdout, "{label}: {s}")?,
                    other => writeln!(stdout, "{label}: {other}")?,
                }
            }
        }
    }
    Ok(())
}
