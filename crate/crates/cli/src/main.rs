//! `dcl`: evaluate functionals of star bodies, verify chord-integral
//! inequalities, run seeded sweeps and slack searches, and emit the
//! deterministic CSV/JSON artifacts downstream tooling plots from.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod cmd;

/// Exit codes are a stable contract:
/// 0 holds/equality, 1 violation, 2 parse or parameter error,
/// 3 positivity rejection, 4 hypothesis violation, 5 I/O failure.
#[derive(Debug)]
pub enum Failure {
    Violation,
    Parse(String),
    Positivity(String),
    Hypothesis(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violation => 1,
            Failure::Parse(_) => 2,
            Failure::Positivity(_) => 3,
            Failure::Hypothesis(_) => 4,
            Failure::Io(_) => 5,
        }
    }

    fn message(&self) -> Option<&str> {
        match self {
            // The violated report is already on stdout; the code says the rest.
            Failure::Violation => None,
            Failure::Parse(m)
            | Failure::Positivity(m)
            | Failure::Hypothesis(m)
            | Failure::Io(m) => Some(m),
        }
    }
}

impl From<dcl_core::Error> for Failure {
    fn from(e: dcl_core::Error) -> Failure {
        match &e {
            dcl_core::Error::PositivityRejected { .. } => Failure::Positivity(e.to_string()),
            dcl_core::Error::HypothesisViolation { .. } => Failure::Hypothesis(e.to_string()),
            _ => Failure::Parse(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "dcl", version, about = "Chord-integral inequality laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate functionals along the closed-form and quadrature routes.
    Eval {
        /// Body JSON file: {"a0": number, "harmonics": [[a1, b1], ...]}.
        body: PathBuf,
        /// Comma-separated: area, oriented_area, dual_mixed_area_disk, chord_self.
        #[arg(default_value = "area,oriented_area,dual_mixed_area_disk")]
        functionals: String,
        /// Rotation order, required by chord_self.
        #[arg(long)]
        k: Option<u32>,
        /// Quadrature node count (default scales with the body's order).
        #[arg(long)]
        nodes: Option<usize>,
        /// Relative dual-route disagreement flagged on stderr.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Evaluate one inequality on a body (or pair) and print the report.
    Verify {
        /// One of T1, T2, T3, C31, stab35, stab37, dual_iso, mixed_iso.
        inequality: String,
        body: PathBuf,
        /// Second body for T3 and mixed_iso.
        partner: Option<PathBuf>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<f64>,
        /// Shift angle in radians.
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long)]
        nodes: Option<usize>,
        /// Relative dual-route disagreement flagged on stderr.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Evaluate outside the admissible parameter range (exploratory).
        #[arg(long)]
        allow_out_of_range: bool,
        /// Zero harmonics at even multiples of k before verifying.
        #[arg(long)]
        project: bool,
    },
    /// Sample an ensemble and sweep a parameter grid; write CSV + summary.
    Sweep {
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Minimize inequality slack from a start body; write trace + terminal.
    Search {
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Tabulate the normalized correlation against its large-order limit.
    Limit {
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Recover profile coefficients from radial samples.
    Fit {
        /// JSON array of [theta, value] sample pairs.
        samples: PathBuf,
        /// Truncation order of the fitted profile.
        #[arg(long)]
        n_max: usize,
        /// Write the fitted body JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every sweep in a config against one ensemble; write all artifacts.
    Report {
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("DCL_THREADS") else { return Ok(()) };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Failure::Parse(format!("DCL_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Parse(format!("thread pool setup failed: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| cmd::run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if let Some(msg) = failure.message() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(failure.code())
        }
    }
}
