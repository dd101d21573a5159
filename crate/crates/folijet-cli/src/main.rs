//! `folijet`: batch front end for normal forms, tangency curves, realization
//! and genericity certificates.
//!
//! Exit codes: 0 success, 2 input error, 3 degenerate configuration,
//! 4 non-generic realization, 5 internal verification failure.

mod config;
mod report;
mod schema;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use normal_forms::normal_form;
use realization::{check_genericity, realize_with_shift, RealizationError, RealizeOptions};
use series_core::ToleranceConfig;
use tangency_curves::forward;

use config::ConfigError;
use report::{CoeffRow, CurveOut, Envelope, NormalFormOut};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// Canonical normal-form coefficients through order k0.
    NormalForm,
    /// Jets of the curve of tangencies at every marked point.
    Tangency,
    /// Recover the invariants from prescribed curve jets.
    Realize,
    /// Genericity certificate for the realization problem.
    Check,
    /// Run the oracle-backed property suite on the configuration.
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::NormalForm => "normal-form",
            Command::Tangency => "tangency",
            Command::Realize => "realize",
            Command::Check => "check",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "folijet", version, about = "Normal forms and curves of tangencies of foliation pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input JSON document.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Target order.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    k0: Option<u64>,
    /// Output file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized steps (verification cases, quadratic shifts).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
    #[arg(long, global = true)]
    tol_abs: Option<f64>,
}

/// A failure together with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Degenerate(anyhow::Error),
    NonGeneric(anyhow::Error),
    Verification(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Degenerate(_) => 3,
            Failure::NonGeneric(_) => 4,
            Failure::Verification(_) => 5,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Input(e) | Failure::Degenerate(e) | Failure::NonGeneric(e) | Failure::Verification(e) => e,
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Input(m) => Failure::Input(anyhow::anyhow!(m)),
            ConfigError::Degenerate(m) => Failure::Degenerate(anyhow::anyhow!(m)),
        }
    }
}

fn degenerate(e: impl std::fmt::Display) -> Failure {
    Failure::Degenerate(anyhow::anyhow!("{e}"))
}

struct Run {
    command: Command,
    k0: usize,
    seed: u64,
    tol: ToleranceConfig,
    doc: Value,
    format: Format,
    out: PathBuf,
}

impl Run {
    fn envelope<T: Serialize>(&self, result: T) -> Envelope<T> {
        Envelope {
            tool: report::TOOL,
            version: report::VERSION,
            command: self.command.name().into(),
            config_hash: report::config_hash(self.command.name(), self.k0, self.seed, &self.tol, &self.doc),
            k0: self.k0,
            seed: self.seed,
            tolerance: self.tol,
            result,
        }
    }

    fn write<T: Serialize>(&self, result: T, rows: impl FnOnce(&T) -> Vec<CoeffRow>) -> Result<(), Failure> {
        let bytes = match self.format {
            Format::Json => report::to_json(&self.envelope(result)),
            Format::Csv => report::to_csv(&rows(&result)),
        }
        .map_err(Failure::Input)?;
        std::fs::write(&self.out, bytes)
            .with_context(|| format!("cannot write {}", self.out.display()))
            .map_err(Failure::Input)
    }
}

fn prepare(cli: Cli) -> Result<Run, Failure> {
    let missing = |what: &str| Failure::Input(anyhow::anyhow!("--{what} is required"));
    let input = cli.input.ok_or_else(|| missing("input"))?;
    let out = cli.out.ok_or_else(|| missing("out"))?;
    let k0 = cli.k0.ok_or_else(|| missing("k0"))? as usize;
    let defaults = ToleranceConfig::default();
    let tol = ToleranceConfig::new(cli.tol_abs.unwrap_or(defaults.abs), cli.tol_rel.unwrap_or(defaults.rel));
    if !(tol.abs >= 0.0 && tol.rel >= 0.0 && tol.abs.is_finite() && tol.rel.is_finite()) {
        return Err(Failure::Input(anyhow::anyhow!("tolerances must be finite and non-negative")));
    }
    let bytes = std::fs::read(&input)
        .with_context(|| format!("cannot read {}", input.display()))
        .map_err(Failure::Input)?;
    let doc = config::parse_json(&bytes)?;
    Ok(Run { command: cli.command, k0, seed: cli.seed, tol, doc, format: cli.format, out })
}

fn execute(run: &Run) -> Result<(), Failure> {
    match run.command {
        Command::NormalForm => {
            let fp = config::pair_from_value(&run.doc, run.k0, "")?;
            let table = normal_form(&fp, run.k0).map_err(degenerate)?;
            let scale = table
                .b_n
                .iter()
                .chain(&table.a_n)
                .flat_map(|p| p.poly.iter().chain(p.poles.iter().flat_map(|t| t.coeffs.iter())))
                .map(|c| c.norm())
                .fold(1.0, f64::max);
            let worst = table.holomorphy_defect.iter().copied().fold(0.0, f64::max);
            if worst > run.tol.abs + run.tol.rel * scale {
                return Err(Failure::Verification(anyhow::anyhow!(
                    "local coefficients keep principal parts of size {worst:e}"
                )));
            }
            run.write(NormalFormOut::from(&table), report::normal_form_rows)
        }
        Command::Tangency => {
            let fp = config::pair_from_value(&run.doc, run.k0, "")?;
            let curve = forward(&fp, run.k0).map_err(degenerate)?;
            run.write(CurveOut::from(&curve), report::curve_rows)
        }
        Command::Check => {
            let fp = config::pair_from_value(&run.doc, run.k0, "")?;
            let cert = check_genericity(&fp, run.k0, RealizeOptions::default().genericity);
            run.write(cert, |c| {
                c.factors
                    .iter()
                    .chain(&c.rank_checks)
                    .map(|f| CoeffRow::new("factor", &f.label, c.k0, 0, f.value))
                    .collect()
            })
        }
        Command::Realize => {
            let (fp, curve) = config::realize_from_value(&run.doc, run.k0)?;
            let res = realize_with_shift(&fp, &curve, run.k0, &RealizeOptions::default(), run.seed).map_err(|e| match e {
                RealizationError::NonGeneric { .. }
                | RealizationError::VanishingZ1 { .. }
                | RealizationError::NoGenericShift
                | RealizationError::SingularSystem { .. } => Failure::NonGeneric(anyhow::anyhow!("{e}")),
                RealizationError::BranchCount { .. }
                | RealizationError::AnchorMismatch { .. }
                | RealizationError::CurveTooShort { .. } => Failure::Input(anyhow::anyhow!("{e}")),
                other => degenerate(other),
            })?;
            let scale = curve.branches.iter().flat_map(|b| b.coeffs.iter().map(|c| c.norm())).fold(1.0, f64::max);
            if res.residual > run.tol.abs + run.tol.rel * scale {
                return Err(Failure::Verification(anyhow::anyhow!(
                    "recovered invariants reproduce the curve only to {:e}",
                    res.residual
                )));
            }
            run.write(res, |r| {
                let mut rows = report::invariant_rows("s", 'p', &r.s);
                rows.extend(report::invariant_rows("z", 'q', &r.z));
                rows
            })
        }
        Command::Verify => {
            let fp = config::pair_from_value(&run.doc, run.k0, "")?;
            let rep = verify::run(&fp, run.k0, run.seed, &run.tol);
            let passed = rep.passed;
            run.write(rep, |r| {
                r.checks.iter().map(|c| CoeffRow::new(c.name, "", c.cases, 0, c.max_residual.into())).collect()
            })?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Verification(anyhow::anyhow!("property suite failed; see {}", run.out.display())))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match prepare(cli).and_then(|run| execute(&run)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("folijet: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
