//! `superpos`: theory tables, simulations, sweeps, comparisons, capacity
//! searches and preset figures from the command line.

mod commands;
mod presets;
mod table;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use table::{Format, Sink};

#[derive(Parser, Debug)]
#[command(name = "superpos", version = env!("SUPERPOS_GIT_DESCRIBE"), about = "Superposition memory theory and simulation")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// JSON configuration file for the subcommand.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for output tables and their .meta.json sidecars (default: stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Master seed, overriding the configuration.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte-Carlo trials, overriding the configuration or preset.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Tolerance of `compare` in binomial standard errors.
    #[arg(long, global = true, default_value_t = 3.0)]
    pub tolerance_sigmas: f64,
    /// Progress on stderr; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Retrieval accuracy and information from the analytical theory.
    Theory(commands::TheoryArgs),
    /// Run one Monte-Carlo experiment (config: an experiment spec).
    Simulate,
    /// Run a grid of experiments (config: a sweep grid).
    Sweep,
    /// Run experiments and check them against theory; exits 1 on failure.
    Compare,
    /// Grid search for the parameter maximizing information per neuron.
    Optimize,
    /// Regenerate a preset table.
    Figure {
        /// Preset id, e.g. 2A or 5G.
        id: Option<String>,
        /// List the presets.
        #[arg(long)]
        list: bool,
    },
}

/// Outcome of a subcommand that ran to completion.
pub enum Status {
    Ok,
    CheckFailed,
}

fn run(cli: Cli) -> Result<Status> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let sink = Sink { out: cli.global.out.clone(), format: cli.global.format };
    let g = &cli.global;
    match cli.command {
        Command::Theory(args) => commands::theory(g, &sink, &args),
        Command::Simulate => commands::simulate(g, &sink),
        Command::Sweep => commands::sweep(g, &sink),
        Command::Compare => commands::compare(g, &sink),
        Command::Optimize => commands::optimize(g, &sink),
        Command::Figure { list: true, .. } => {
            presets::list();
            Ok(Status::Ok)
        }
        Command::Figure { id: Some(id), .. } => presets::figure(g, &sink, &id),
        Command::Figure { id: None, .. } => anyhow::bail!("figure needs an id or --list"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
