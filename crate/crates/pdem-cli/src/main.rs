//! `pdem` — spectra, wavefunction samples, and a verification matrix for
//! bound states with a power-law position-dependent mass.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 numerical failure.  Panics never reach the shell; they are reported
//! on stderr and mapped to code 3.

mod commands;
mod config;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "pdem", version, about = "Bound states with a power-law effective mass")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energy table for every case in the config
    Spectrum(CommonArgs),
    /// Sample one normalized radial wavefunction on a uniform grid
    Wavefunction(WavefunctionArgs),
    /// Compare closed-form and finite-difference spectra case by case
    Verify(VerifyArgs),
    /// Tabulate the (D, l) -> (D+2, l-1) energy coincidence at constant mass
    Degeneracy(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON case bundle (see fixtures/ for the schema)
    #[arg(long)]
    config: PathBuf,
    /// Write the table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the coarsest grid size from the config
    #[arg(long = "grid-N")]
    grid_n: Option<usize>,
    /// Override the relative energy tolerance from the config
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Radial quantum number (defaults to the config's single n entry)
    #[arg(long)]
    n: Option<u32>,
    /// Angular quantum number (defaults to the config's single l entry)
    #[arg(long)]
    l: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON case bundle; omitted = built-in unit-parameter matrix
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit the report as structured JSON instead of text lines
    #[arg(long)]
    json: bool,
    /// Override the coarsest grid size from the config
    #[arg(long = "grid-N")]
    grid_n: Option<usize>,
    /// Override the relative energy tolerance from the config
    #[arg(long)]
    tol: Option<f64>,
    /// Perturb the angular matching constant (harness self-test)
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad config file, flags, or parameter bundle (exit 2).
    Config(Vec<String>),
    /// Solver or quadrature breakdown (exit 3).
    Numeric(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    fn lines(&self) -> Vec<String> {
        match self {
            CliError::Config(v) => v.clone(),
            CliError::Numeric(m) => vec![m.clone()],
        }
    }
}

fn run() -> Result<i32, CliError> {
    match Cli::parse().command {
        Command::Spectrum(args) => {
            let spec = config::CaseSpec::load(&args.config)?;
            commands::spectrum(&spec, &args.out)
        }
        Command::Wavefunction(args) => {
            let spec = config::CaseSpec::load(&args.common.config)?;
            commands::wavefunction(&spec, args.n, args.l, args.common.grid_n, &args.common.out)
        }
        Command::Verify(args) => commands::verify(
            args.config.as_deref(),
            args.grid_n,
            args.tol,
            args.json,
            args.inject_fault,
            &args.out,
        ),
        Command::Degeneracy(args) => {
            let spec = config::CaseSpec::load(&args.config)?;
            commands::degeneracy(&spec, &args.out)
        }
    }
}

fn main() {
    let code = match std::panic::catch_unwind(run) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            for line in e.lines() {
                eprintln!("pdem: {line}");
            }
            e.code()
        }
        Err(cause) => {
            let text = cause
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| cause.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            eprintln!("pdem: internal numerical failure: {text}");
            3
        }
    };
    std::process::exit(code);
}
