//! `qlogic`: classify finite event lattices, compute and check states,
//! generate projector lattices and test Cox-style rules.
//!
//! Reports are JSON on standard output. Exit codes: 0 pass, 1 a law or
//! constraint violation was found, 2 usage or parse error.

mod commands;
mod source;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use qlogic::io::report;

pub const PASS: u8 = 0;
pub const VIOLATION: u8 = 1;
pub const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "qlogic", version, about = "Finite quantum-logic toolkit")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Numerical tolerance for float comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Element or vertex cap.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Add the Hasse diagram in Graphviz syntax under `"dot"`.
    #[arg(long, global = true)]
    pub dot: bool,
    /// Force rational arithmetic.
    #[arg(long, global = true, conflicts_with = "float")]
    pub exact: bool,
    /// Force floating point arithmetic.
    #[arg(long, global = true)]
    pub float: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Axiom-ladder classification of a lattice.
    Classify { source: String },
    /// Find a state, the extreme states, the affine relations, or samples.
    States {
        source: String,
        mode: StatesMode,
        /// Number of samples for `sample`.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Scan every sample for a classical law.
        #[arg(long)]
        scan: Option<Scan>,
    },
    /// Check a `.val` valuation against the state constraints.
    Check { source: String, valuation: String },
    /// Generate the lattice spanned by seed subspaces and evaluate a density matrix.
    Hilbert {
        seeds: String,
        /// `maxmixed`, `pure:(c1,...)`, `random`, or a JSON matrix file.
        #[arg(long)]
        rho: Option<String>,
        #[arg(long, requires = "rho")]
        scan: Option<Scan>,
    },
    /// Check a built-in rule or CSV samples (x, y, f).
    Cox {
        function: String,
        check: CoxCheck,
        #[arg(long, default_value_t = qlogic::cox::DEFAULT_GRID)]
        grid: usize,
        /// Rescale factors tried after `regraduate`.
        #[arg(long, value_delimiter = ',', default_values_t = [0.5, 2.0, 10.0])]
        factors: Vec<f64>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum StatesMode {
    Find,
    Extremes,
    Relations,
    Sample,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Scan {
    #[value(name = "ie")]
    InclusionExclusion,
    Subadd,
    Decomposition,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum CoxCheck {
    Involution,
    Assoc,
    Regraduate,
}

/// A report together with the exit code it ends with.
pub struct Failure {
    pub code: u8,
    pub report: Map<String, Value>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            report: report::error("usage", &message.into()),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            report: report::error("parse", &message.into()),
        }
    }

    pub fn violation(report: Map<String, Value>) -> Self {
        Failure {
            code: VIOLATION,
            report,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli.common, cli.command);
    let (code, report) = match outcome {
        Ok(report) => (PASS, report),
        Err(f) => (f.code, f.report),
    };
    print!("{}", report::render(&report));
    ExitCode::from(code)
}
