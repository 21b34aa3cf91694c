//! `qtc3d`: encode trajectory pairs, dump frames, and run entropy analyses
//! from the command line.

mod commands;
mod config;
mod manifest;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qtc3d::{ErrorKind, QtcError};

use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "qtc3d", version, about = "Qualitative trajectory calculus for 2D and 3D trajectory pairs")]
struct Cli {
    /// TOML file with default settings (flag names in snake_case); flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Encode one pair into a symbol sequence.
    Encode,
    /// Dump the discrete Frenet frames of one trajectory.
    Frames,
    /// Per-angle histograms of the relative frame rotation of one pair.
    Histogram,
    /// Entropy of every manifest pair at one threshold, plus the class ratio.
    Analyze,
    /// Class entropy statistics over a grid of thresholds.
    Sweep,
    /// Write seeded synthetic leader, follower and nonfollower flights.
    Synth,
}

#[derive(Debug)]
pub enum CliError {
    Core(QtcError),
    Config(String),
}

impl From<QtcError> for CliError {
    fn from(e: QtcError) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Config(m) => write!(f, "config: {m}"),
        }
    }
}

impl CliError {
    /// 1 for analysis-domain errors, 2 for bad input.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.kind() == ErrorKind::Domain => 1,
            _ => 2,
        }
    }

    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Config(_) => "ConfigError",
        }
    }

    fn line(&self) -> Option<u64> {
        match self {
            CliError::Core(QtcError::Parse { line, .. }) => Some(*line),
            _ => None,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => cli.run.over(RunConfig::load(path)?),
        None => cli.run,
    };
    match cli.command {
        Command::Encode => commands::encode(&cfg),
        Command::Frames => commands::frames(&cfg),
        Command::Histogram => commands::histogram(&cfg),
        Command::Analyze => commands::analyze(&cfg),
        Command::Sweep => commands::sweep_cmd(&cfg),
        Command::Synth => commands::synth(&cfg),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        // downstream reader went away, e.g. `| head`
        Err(CliError::Core(QtcError::Io(e))) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let mut report = serde_json::json!({
                "error": e.code(),
                "exit_code": e.exit_code(),
                "message": e.to_string(),
            });
            if let Some(line) = e.line() {
                report["line"] = line.into();
            }
            eprintln!("{report}");
            ExitCode::from(e.exit_code())
        }
    }
}
