//! `kcsp`: generate instances, solve them with SDP rounding, and check the
//! per-clause guarantees of each rounding scheme by simulation.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kcsp_core::Scheme;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "kcsp", version, about)]
pub struct Cli {
    /// TOML file with defaults for seed, tol, max_rounds, rounds, trials, restarts, threads, format
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Master seed; every random stream is derived from it
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for rounding trials
    #[arg(long, global = true, env = "KCSP_THREADS")]
    pub threads: Option<usize>,
    /// Run all trials on the calling thread
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Log more (repeat for debug output)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random instance
    Gen(GenArgs),
    /// Solve the relaxation, round repeatedly and report the best assignment
    Solve(SolveArgs),
    /// Per-clause satisfaction frequencies of one rounding scheme
    Round(RoundArgs),
    /// Like `round`, but exits 1 when a clause misses its bound (one retry)
    Verify(RoundArgs),
    /// Boolean-variant constants, or grid checks of the Gaussian inequalities
    Constants(ConstantsArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: usize,
    /// Output file (standard output when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct SolverArgs {
    /// Accepted feasibility residual of the relaxation solution
    #[arg(long)]
    pub tol: Option<f64>,
    /// Random restarts of the relaxation solver
    #[arg(long)]
    pub restarts: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Cap on rounding trials
    #[arg(long)]
    pub max_rounds: Option<u64>,
    /// Exact number of rounding trials
    #[arg(long)]
    pub rounds: Option<u64>,
    /// Report file (standard output when absent)
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Use the boolean algorithm (d = 2 only)
    #[arg(long)]
    pub boolean: bool,
    /// Also write the relaxation solution
    #[arg(long, value_name = "FILE")]
    pub dump_sdp: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RoundArgs {
    pub instance: PathBuf,
    #[arg(long, default_value_t = Scheme::General)]
    pub scheme: Scheme,
    #[arg(long)]
    pub trials: Option<u64>,
    /// Relaxation solution to round (solved on the fly when absent)
    #[arg(long, value_name = "FILE")]
    pub sdp_in: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Output file (standard output when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// beta0 and alpha0 (the default)
    #[arg(long)]
    pub boolean: bool,
    /// Add the g(beta) table
    #[arg(long)]
    pub g_table: bool,
    /// Check the Gaussian tail inequalities on fixed grids; exits 1 on a violation
    #[arg(long, conflicts_with_all = ["boolean", "g_table"])]
    pub check_gauss: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match commands::run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
