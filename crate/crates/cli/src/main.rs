//! `torsionlab` command-line driver.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{RunConfig, Tolerances};
use error::CliError;
use torsionlab::algebra::{Precision, DEFAULT_PRECISION};
use torsionlab::explorer::Thresholds;
use torsionlab::reps::Schedule;

#[derive(Parser)]
#[command(name = "torsionlab", version, about = "Twisted Alexander polynomials along SL(2, C) character curves")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Working precision in bits.
    #[arg(long, global = true, env = "TORSIONLAB_PRECISION", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol_residual: f64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_symmetry: f64,
    /// Relative remainder allowed when dividing out the denominator.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_zero: f64,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// RNG seed for sampled representation points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RepKind {
    Riley,
    Trivial,
}

#[derive(Args)]
struct PointArgs {
    /// Riley parameter `s` as "re,im".
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Riley parameter `u` as "re,im"; defaults to the chosen root over `s`.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Root index over `s` (roots sorted by argument, then modulus).
    #[arg(long, default_value_t = 0)]
    branch: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Torsion polynomial at one representation point.
    Compute {
        #[arg(long)]
        knot: String,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = RepKind::Riley)]
        rep: RepKind,
    },
    /// Torsion polynomials over a grid of `s` values (CSV).
    Scan {
        #[arg(long)]
        knot: String,
        /// Grid points as "re,im"; repeatable. Defaults to a unit-circle grid.
        #[arg(long = "s", allow_hyphen_values = true)]
        grid: Vec<String>,
        /// Size of the default unit-circle grid.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Two-column data file: arg(s), |c|.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Follow a branch toward an ideal point and classify `|c|` (JSON).
    IdealLimit {
        #[arg(long)]
        knot: String,
        #[command(flatten)]
        point: PointArgs,
        /// Branch seed file `{"s": [re, im], "u": [re, im]}`.
        #[arg(long, conflicts_with_all = ["s", "u"])]
        seed_file: Option<PathBuf>,
        #[arg(long, default_value_t = 2.0)]
        ratio: f64,
        #[arg(long, default_value_t = 40)]
        steps: usize,
        /// Telemetry table.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Two-column data file: step, |c|.
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long, default_value_t = Thresholds::default().trace_blowup)]
        trace_blowup: f64,
        #[arg(long, default_value_t = Thresholds::default().tail_variation)]
        tail_variation: f64,
        #[arg(long, default_value_t = Thresholds::default().divergence_factor)]
        divergence_factor: f64,
    },
    /// Monicity test over sampled points.
    FiberedTest {
        #[arg(long)]
        knot: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Lower bound on the genus from the span over sampled points.
    GenusBound {
        #[arg(long)]
        knot: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Torsion of a based chain complex read from JSON.
    Torsion {
        #[arg(long)]
        complex: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let c = cli.common;
    let mut config = RunConfig {
        precision: Precision::new(c.precision)?,
        tolerances: Tolerances { residual: c.tol_residual, symmetry: c.tol_symmetry, zero: c.tol_zero },
        out: c.out,
        seed: c.seed,
        ..RunConfig::default()
    };
    if let Command::IdealLimit { ratio, steps, trace_blowup, tail_variation, divergence_factor, .. } = &cli.command {
        config.schedule = Schedule { ratio: *ratio, steps: *steps };
        config.thresholds = Thresholds {
            trace_blowup: *trace_blowup,
            tail_variation: *tail_variation,
            divergence_factor: *divergence_factor,
            ..Thresholds::default()
        };
    }
    config.validate()?;

    match cli.command {
        Command::Compute { knot, point, rep } => match rep {
            RepKind::Riley => commands::compute(&config, &knot, &point.s, &point.u, point.branch),
            RepKind::Trivial => commands::compute_trivial(&config, &knot),
        },
        Command::Scan { knot, grid, samples, plot } => commands::scan(&config, &knot, &grid, samples, plot.as_deref()),
        Command::IdealLimit { knot, point, seed_file, csv, plot, .. } => {
            let seed = match seed_file {
                Some(path) => commands::Seed::File(path),
                None => commands::Seed::Flags { s: point.s, u: point.u, branch: point.branch },
            };
            commands::ideal_limit(&config, &knot, seed, csv.as_deref(), plot.as_deref())
        }
        Command::FiberedTest { knot, samples } => commands::fibered_test(&config, &knot, samples),
        Command::GenusBound { knot, samples } => commands::genus_bound(&config, &knot, samples),
        Command::Torsion { complex } => commands::torsion(&config, &complex),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            if code != 0 {
                eprintln!("error: UsageError");
                return ExitCode::from(2);
            }
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("torsionlab: {}", e.message);
            eprintln!("error: {}", e.name);
            ExitCode::from(e.code as u8)
        }
    }
}
