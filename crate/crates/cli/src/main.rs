//! Command-line driver: classify group words, reproduce the block-size
//! table for the two distinguished words, run the separation experiment,
//! chop modules into composition factors, and dump class labels.

mod chop_cmd;
mod classify;
mod config;
mod expr;
mod labels;
mod separate;
mod table3;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

pub(crate) const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] unirep::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("hard assertion failed: {0}")]
    Assertion(String),
}

/// Options shared by every subcommand. All of them can also come from the
/// `--config` key=value file; explicit flags win over the file.
#[derive(Args, Debug, Default, Clone)]
pub(crate) struct CommonOpts {
    /// Preset group: sp2, sp4, sp6, sp8, or sp10.
    #[arg(long)]
    preset: Option<String>,
    /// Base seed; every derived random stream is mixed from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker count for parallel phases.
    #[arg(long)]
    workers: Option<usize>,
    /// Largest intermediate module dimension the builder may materialize.
    #[arg(long)]
    budget: Option<usize>,
    /// Word-search saturation window (stop after this many words without
    /// a new label).
    #[arg(long)]
    saturation: Option<usize>,
    /// Write the JSON report to this path (human output still goes to
    /// standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Parser)]
#[command(
    name = "unirep",
    version,
    about = "Unipotent classes of symplectic groups over GF(2) and their Jordan types on the restricted irreducibles"
)]
struct Cli {
    /// Flat key=value config file; command-line flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a word in the generators: unipotency, order, Jordan type
    /// on the natural module, and class label.
    Classify {
        #[command(flatten)]
        common: CommonOpts,
        /// Word such as "B4AB6AB5A"; preset-named words (u, u') work too.
        #[arg(long)]
        word: String,
    },
    /// Build or predict every tabulated irreducible row and hard-assert
    /// that the two distinguished words act with equal Jordan types.
    Table3 {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Collect class labels, compute each witness's Jordan types on all
    /// fundamental irreducibles, and report label pairs those types fail
    /// to separate.
    Separate {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Chop a module into composition factors with multiplicities.
    Chop {
        #[command(flatten)]
        common: CommonOpts,
        /// Module expression: nat | ext(e, i) | tensor(e, e) | dual(e).
        #[arg(long, conflicts_with = "module")]
        expr: Option<String>,
        /// Path to a representation file ("p dim ngens" header format).
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Random-search the class labels and dump them with witness words.
    Labels {
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config_path = cli.config.as_deref();
    match cli.command {
        Command::Classify { common, word } => {
            let cfg = config::RunConfig::resolve(config_path, &common)?;
            classify::run(&cfg, &word)
        }
        Command::Table3 { common } => {
            let cfg = config::RunConfig::resolve(config_path, &common)?;
            table3::run(&cfg)
        }
        Command::Separate { common } => {
            let cfg = config::RunConfig::resolve(config_path, &common)?;
            separate::run(&cfg)
        }
        Command::Chop {
            common,
            expr,
            module,
        } => {
            let cfg = config::RunConfig::resolve(config_path, &common)?;
            chop_cmd::run(&cfg, expr.as_deref(), module.as_deref())
        }
        Command::Labels { common } => {
            let cfg = config::RunConfig::resolve(config_path, &common)?;
            labels::run(&cfg)
        }
    }
}

/// Writes a JSON report next to the human output when `--out` was given.
pub(crate) fn emit_json<T: serde::Serialize>(
    out: Option<&std::path::Path>,
    report: &T,
) -> Result<(), CliError> {
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(report)
            .map_err(|e| CliError::Parse(format!("serialize report: {e}")))?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(())
}
