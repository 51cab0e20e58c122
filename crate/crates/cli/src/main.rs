mod commands;
mod config;
mod output;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Relativistic Burgers equation on a (1+1)-dimensional de Sitter background.
#[derive(Debug, Parser)]
#[command(name = "desitter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the geometry, fluid, model and solver self-checks.
    Verify {
        /// Print one JSON record per check instead of a table.
        #[arg(long)]
        json: bool,
        /// Perturbs one closed-form Christoffel entry before comparison.
        #[arg(long, hide = true, default_value_t = 0.0)]
        inject_christoffel_fault: f64,
    },
    /// Run one simulation and write its snapshots and meta.json.
    Run {
        /// Config file, meta.json of an earlier run, or preset (fig1..fig7).
        config: String,
        /// `--key=value` settings that override the config.
        #[arg(allow_hyphen_values = true)]
        overrides: Vec<String>,
    },
    /// Run the same initial data for several lambdas and compare with lambda = 0.
    Sweep {
        config: String,
        /// Comma-separated lambdas; defaults to the preset pair or `0,<lambda>`.
        #[arg(long)]
        lambdas: Option<String>,
        #[arg(allow_hyphen_values = true)]
        overrides: Vec<String>,
    },
    /// Evolve a static profile and report its drift.
    Static {
        config: String,
        /// Run every scheme mode, each into its own subdirectory.
        #[arg(long)]
        all_modes: bool,
        #[arg(allow_hyphen_values = true)]
        overrides: Vec<String>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Verification(String),
    Instability(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Config(_) | Failure::Io(_) => 2,
            Failure::Instability(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "configuration error: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Instability(m) => write!(f, "runtime instability: {m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<desitter::Error> for Failure {
    fn from(e: desitter::Error) -> Self {
        match e {
            desitter::Error::Instability { .. } => Failure::Instability(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(format!("{e:#}"))
    }
}

/// Once the override list starts, clap hands every later argument to it,
/// including the subcommand's own flags; pull those back out.
fn take_flag(overrides: &mut Vec<String>, flag: &str) -> Option<String> {
    let with_value = format!("{flag}=");
    let pos = overrides.iter().position(|a| a == flag || a.starts_with(&with_value))?;
    let arg = overrides.remove(pos);
    match arg.strip_prefix(&with_value) {
        Some(value) => Some(value.to_string()),
        None if pos < overrides.len() && !overrides[pos].starts_with("--") => Some(overrides.remove(pos)),
        None => Some(String::new()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { json, inject_christoffel_fault } => commands::verify(json, inject_christoffel_fault),
        Command::Run { config, overrides } => commands::run_once(&config, &overrides),
        Command::Sweep { config, lambdas, mut overrides } => {
            let lambdas = take_flag(&mut overrides, "--lambdas").or(lambdas);
            commands::run_sweep(&config, lambdas.as_deref(), &overrides)
        }
        Command::Static { config, all_modes, mut overrides } => {
            let late = take_flag(&mut overrides, "--all-modes").is_some();
            commands::run_static(&config, all_modes || late, &overrides)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("desitter: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
