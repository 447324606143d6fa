//! `qaxes`: tables, comparisons and Monte-Carlo runs for estimating the angle
//! between two spin-built axes.

mod commands;
mod format;

use std::fmt;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qaxes", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (default: available parallelism).
    #[arg(long, env = "QAXES_THREADS", global = true)]
    threads: Option<NonZeroUsize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimal figure of merit and estimator for two parallel-spin axes.
    Delta {
        /// Spins in the first axis.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n1: u32,
        /// Spins in the second axis.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n2: u32,
    },
    /// Grid of figures of merit over N1 = 1..=n1-max, N2 = 1..=n2-max.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n1_max: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n2_max: u32,
    },
    /// Parallel vs anti-parallel vs optimal two-spin axes against N1 spins.
    Compare {
        /// Comma-separated reference sizes.
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u32).range(1..))]
        n1: Vec<u32>,
        /// Append the infinitely-large-reference row.
        #[arg(long)]
        asymptotic: bool,
    },
    /// Monte-Carlo run of the full protocol.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("x_choice").args(["x", "optimal", "anti"])))]
struct SimulateArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Reference spins (parallel and two-spin modes).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n1: Option<u32>,
    /// Signal spins (parallel and classical modes).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n2: Option<u32>,
    /// Triplet weight of the two-spin axis.
    #[arg(long, value_parser = parse_unit_interval)]
    x: Option<f64>,
    /// Use the weight that maximizes the figure of merit.
    #[arg(long)]
    optimal: bool,
    /// Use the anti-parallel pair, x = 1/2.
    #[arg(long)]
    anti: bool,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1000..))]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Parallel,
    Classical,
    TwoSpin,
}

fn parse_unit_interval(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is outside [0, 1]"))
    }
}

/// Invalid arguments that clap cannot catch on its own.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// A run that completed but whose result fails its own consistency check.
#[derive(Debug, PartialEq, Eq)]
enum Status {
    Ok,
    Inconsistent,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some()
        || matches!(
            err.downcast_ref::<quantum_axes::Error>(),
            Some(quantum_axes::Error::Domain(_))
        )
    {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.get()).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Inconsistent) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
