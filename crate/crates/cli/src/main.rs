//! `projlattice`: run projection-lattice operations and property suites on
//! JSON inputs.
//!
//! Exit codes: 0 when the operation succeeds and every checked invariant
//! holds, 1 when an invariant is violated (the report names it and carries
//! the offending instance), 2 on input or configuration errors.

mod commands;
mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use projlattice::calkin::FamilyKind;
use projlattice::{Error, ToleranceConfig};

#[derive(Debug, Parser)]
#[command(name = "projlattice", version, about = "Projection lattice toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input JSON file (stdin when omitted).
    #[arg(long = "in", global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Eigenvalue clustering radius.
    #[arg(long, global = true)]
    pub tol_eig: Option<f64>,

    /// Slack for order comparisons.
    #[arg(long, global = true)]
    pub tol_order: Option<f64>,

    /// Seed for randomized suites (required by `verify`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Instance count per randomized suite.
    #[arg(long, global = true)]
    pub count: Option<usize>,

    /// Dimension cap for generated instances (at most 64).
    #[arg(long, global = true, default_value_t = projlattice::verify::DEFAULT_MAX_DIM)]
    pub max_dim: usize,

    /// Truncation for Calkin-model families.
    #[arg(long = "N", global = true, default_value_t = 200)]
    pub truncation: usize,

    #[arg(long, global = true, value_enum)]
    pub family: Option<FamilyArg>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Meet of a family of projections.
    Meet,
    /// Join of a family of projections.
    Join,
    /// Spectral g.l.b. criterion for `T = P_0 ... P_k`.
    GlbCheck,
    /// Decide whether `R` is the meet from `||T - R|| < 1`.
    NormCheck,
    /// Nonzero `R <= P` with `R ∧ Q = 0`.
    SepWitness,
    /// Self-adjoint gap element below a non-commuting pair.
    Gap,
    /// Decreasing equalizers with the same meet.
    Decreasing,
    /// Increasing equalizer with the same join.
    Increasing,
    /// Spectral-family estimate for `(S, P, s, t)`.
    EeCheck,
    /// Lift a projection through a surjective block morphism.
    Pullback,
    /// Interpolate a finite pregap in the target algebra.
    Interpolate,
    /// Essential norms, order and spectra for a block-sequence family.
    CalkinDemo,
    /// Run every seeded property suite.
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Meet => "meet",
            Command::Join => "join",
            Command::GlbCheck => "glb-check",
            Command::NormCheck => "norm-check",
            Command::SepWitness => "sep-witness",
            Command::Gap => "gap",
            Command::Decreasing => "decreasing",
            Command::Increasing => "increasing",
            Command::EeCheck => "ee-check",
            Command::Pullback => "pullback",
            Command::Interpolate => "interpolate",
            Command::CalkinDemo => "calkin-demo",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Badpq,
    Pomega,
    Custom,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Badpq => FamilyKind::Badpq,
            FamilyArg::Pomega => FamilyKind::Pomega,
            FamilyArg::Custom => FamilyKind::Custom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

impl Cli {
    pub fn tolerances(&self) -> Result<ToleranceConfig, Error> {
        let mut cfg = ToleranceConfig::default();
        if let Some(e) = self.tol_eig {
            cfg = cfg.with_eig_cluster(e)?;
        }
        if let Some(o) = self.tol_order {
            cfg = cfg.with_order_tol(o)?;
        }
        Ok(cfg)
    }

    pub fn read_input(&self) -> Result<String, Error> {
        match &self.input {
            Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            }),
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Io {
                    path: "<stdin>".into(),
                    message: e.to_string(),
                })?;
                Ok(s)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match commands::run(&cli) {
        Ok(outcome) => {
            let ok = outcome.violations.is_empty();
            let text = render::report(name, &outcome, cli.format);
            if let Err(e) = emit(&cli, &text) {
                eprint!("{}", render::error(name, &e, cli.format));
                return ExitCode::from(2);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprint!("{}", render::error(name, &e, cli.format));
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
