//! Command-line front end and experiment harness for `tspk`.

pub mod bench;
mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Parser, Subcommand};

pub use commands::{exact_report, solve_report, ExactReport, SolveReport};

#[derive(Debug, Parser)]
#[command(
    name = "tspk",
    version,
    about = "TSP approximation for instances with few violating triangles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the violating triangles and the bad/good split.
    Audit { file: std::path::PathBuf },
    /// Approximate a tour.
    Solve {
        file: std::path::PathBuf,
        /// Refuse instances with more bad vertices.
        #[arg(long, default_value_t = 9)]
        max_bad: usize,
        /// Worker threads over layouts.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include the winning layout and its cost breakdown.
        #[arg(long)]
        cert: bool,
        /// Also run Held–Karp and report the ratio.
        #[arg(long)]
        exact: bool,
    },
    /// Exact optimum by Held–Karp (n <= 18).
    Exact { file: std::path::PathBuf },
    /// Generate an instance.
    #[command(group(ArgGroup::new("kind").required(true).args(["metric", "planted"])))]
    Gen {
        #[arg(long)]
        metric: bool,
        #[arg(long, requires = "bad")]
        planted: bool,
        /// Size of the planted bad subset.
        #[arg(long)]
        bad: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "out")]
        out: std::path::PathBuf,
    },
    /// Solve and (where feasible) optimize every instance in a directory,
    /// appending one CSV row per instance.
    Bench {
        #[arg(long)]
        dir: std::path::PathBuf,
        #[arg(long)]
        out: std::path::PathBuf,
        #[arg(long, default_value_t = 9)]
        max_bad: usize,
        /// Worker threads over instances.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Failure classes that map to exit codes.
#[derive(Debug)]
pub enum Failure {
    Input(anyhow::Error),
    Refusal(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Refusal(_) => 2,
        }
    }
}

impl From<tspk_core::Error> for Failure {
    fn from(e: tspk_core::Error) -> Self {
        if e.is_refusal() {
            Failure::Refusal(e.into())
        } else {
            Failure::Input(e.into())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<tspk_core::Error>() {
            Some(core) if core.is_refusal() => Failure::Refusal(e),
            _ => Failure::Input(e),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match commands::dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let (Failure::Input(e) | Failure::Refusal(e)) = &f;
            let _ = writeln!(err, "error: {}", format!("{e:#}").replace('\n', " "));
            f.code()
        }
    }
}
