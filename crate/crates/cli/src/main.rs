//! `distrustful`: run protocol sessions, cheating experiments and bound
//! derivations from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "distrustful", version, about = "Device-independent bit commitment and coin flipping simulator")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RunConfig {
    /// Monte Carlo trials
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Independent output-flip probability per box, in [0, 0.5]
    #[arg(long, global = true, default_value_t = 0.0, value_parser = parse_noise)]
    pub noise: f64,
    /// Coin-flip repetitions (maximum n for bias-table)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Tolerance for the numerically optimized bound
    #[arg(long, global = true, default_value_t = 1e-6, value_parser = parse_tolerance)]
    pub tolerance: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Honest bit commitment over GHZ boxes
    BcRun {
        /// Behavior table JSON to use instead of the GHZ boxes
        #[arg(long)]
        table: Option<PathBuf>,
        /// Write every session as one JSON line
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Exact and simulated success of a cheating strategy
    Cheat {
        #[arg(value_enum)]
        party: PartyArg,
        /// Registry name, or file:PATH for a strategy JSON
        strategy: String,
    },
    /// Derive security bounds and check them against their known values
    Bounds {
        #[arg(value_enum, default_value_t = Which::All)]
        which: Which,
        /// Sweep budget per optimizer restart
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        max_sweeps: u64,
    },
    /// Simulate (iterated) coin flipping
    Coinflip {
        #[arg(long, value_enum, default_value_t = CheaterArg::None)]
        cheater: CheaterArg,
    },
    /// Cheating bounds for n = 1..reps repetitions
    BiasTable,
    /// Behavior table import/export
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
    /// Re-run recorded sessions and compare transcripts
    Replay { path: PathBuf },
    /// Cheating strategy descriptors
    Strategy {
        #[command(subcommand)]
        action: StrategyAction,
    },
}

#[derive(Subcommand, Debug)]
enum TableAction {
    /// Write a built-in table (noise applies to ghz)
    Export {
        #[arg(value_enum)]
        kind: TableKind,
    },
    /// Load a table and report its properties
    Import { path: PathBuf },
}

#[derive(Subcommand, Debug)]
enum StrategyAction {
    Export {
        #[arg(value_enum)]
        party: PartyArg,
        name: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartyArg {
    Alice,
    Bob,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    ClassicalGhz,
    Chsh,
    NsGain,
    Pr,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheaterArg {
    None,
    Alice,
    Bob,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Ghz,
    Pr,
}

fn parse_noise(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=0.5).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 0.5]"))
    }
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} is not a positive tolerance"))
    }
}

/// Why a command did not succeed, mapped to the process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    NonConvergence(String),
}

impl From<distrustful::Error> for Failure {
    fn from(e: distrustful::Error) -> Self {
        match e {
            distrustful::Error::NonConvergence { .. } => Failure::NonConvergence(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub enum Outcome {
    Report(output::Report),
    /// Raw JSON document, written as is.
    Document(serde_json::Value),
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let c = &cli.config;
    match cli.command {
        Command::BcRun { table, record } => commands::bc_run(c, table.as_deref(), record.as_deref()),
        Command::Cheat { party, strategy } => commands::cheat(c, party, &strategy),
        Command::Bounds { which, max_sweeps } => commands::bounds(c, which, max_sweeps as usize),
        Command::Coinflip { cheater } => commands::coinflip(c, cheater),
        Command::BiasTable => commands::bias_table(c),
        Command::Table { action } => match action {
            TableAction::Export { kind } => commands::table_export(c, kind),
            TableAction::Import { path } => commands::table_import(c, &path),
        },
        Command::Replay { path } => commands::replay(c, &path),
        Command::Strategy { action } => match action {
            StrategyAction::Export { party, name } => commands::strategy_export(party, &name),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = cli.config.format;
    let out = cli.config.out.clone();
    let (bytes, passed) = match run(cli) {
        Ok(Outcome::Report(report)) => match output::render(&report, format) {
            Ok(b) => (b, report.passed()),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        Ok(Outcome::Document(doc)) => {
            let mut b = serde_json::to_vec_pretty(&doc).expect("JSON value");
            b.push(b'\n');
            (b, true)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::NonConvergence(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    if let Err(e) = output::emit(&bytes, out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
