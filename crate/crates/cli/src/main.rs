use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use radtherm_cli::commands;
use radtherm_cli::model::{Overrides, RunConfig};
use radtherm_cli::CliError;
use radtherm_core::sources::Convention;

#[derive(Parser)]
#[command(name = "radtherm", version, about = "Radiation-pressure damping and heating of levitated targets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Main,
    Supp,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Main => Convention::MainText,
            ConventionArg::Supp => Convention::Supplementary,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// Configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (overrides `output.path`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// RNG seed (overrides `sim.seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Refractive-index convention for cavity sources.
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form force, damping, heating and temperature for one scenario.
    Rates(Common),
    /// Closed-form quantities over a parameter grid, as CSV.
    Sweep(Common),
    /// Closed forms against exact numerical integrals.
    Validate(Common),
    /// Stochastic trajectory simulation with estimator summary.
    Simulate(Common),
}

fn load(c: &Common) -> Result<RunConfig, CliError> {
    let path = c.config.as_ref().ok_or_else(|| CliError::config("--config <path> is required"))?;
    RunConfig::load(path, overrides(c))
}

fn overrides(c: &Common) -> Overrides {
    Overrides { convention: c.convention.map(Into::into), seed: c.seed }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Rates(c) => commands::cmd_rates(&load(&c)?, c.out.as_deref(), &mut out),
        Command::Sweep(c) => commands::cmd_sweep(&load(&c)?, c.out.as_deref(), &mut out),
        Command::Simulate(c) => commands::cmd_simulate(&load(&c)?, c.out.as_deref(), &mut out),
        Command::Validate(c) => {
            let cfg = match &c.config {
                Some(p) => Some(RunConfig::load(p, overrides(&c))?),
                None => None,
            };
            commands::cmd_validate(cfg.as_ref(), c.convention.map(Into::into), c.out.as_deref(), &mut out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("radtherm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
