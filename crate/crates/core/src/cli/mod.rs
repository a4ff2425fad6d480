//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check or construction fails on valid
//! input, 2 for unreadable or invalid configuration.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use commands::{
    cmd_build, cmd_check, cmd_demo, cmd_df, cmd_words, AlphaDepth, BuildSummary, CheckReport,
    DemoReport, DfReport,
};
pub use config::{
    load_file, parse_big, BuildArgs, Construction, Format, RunConfig, RunConfigFile, SourceArgs,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Config(String),
    /// A check or construction failed on well-formed input.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Io(_) | CliError::Config(_) => 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "chaoscert",
    version,
    about = "Certify coupled-expanding interval maps and build distributionally scrambled sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the matrix and the strict coupled-expansion certificate.
    Check(CheckArgs),
    /// Build block schedules for a family of scrambled parameters.
    Build(BuildCmdArgs),
    /// Distribution-function curves and a verdict for a parameter pair.
    Df(DfArgs),
    /// Walk through the bundled example and write every artifact.
    Demo(DemoArgs),
    /// Count and list admissible words.
    Words(WordsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Also write certificate.json here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BuildCmdArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub build: BuildArgs,
    /// Write one JSONL schedule per parameter and the shared positions here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// How many positions of the shared sequence to list.
    #[arg(long, default_value_t = 64)]
    pub positions: usize,
}

#[derive(Debug, Clone, Args)]
pub struct DfArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub build: BuildArgs,
    /// Indices of the two parameters, e.g. "0,1".
    #[arg(long, default_value = "0,1")]
    pub pair: String,
    /// Exact-orbit cross-check length; defaults to 1000 on capped runs.
    #[arg(long)]
    pub orbit_len: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DemoArgs {
    #[arg(long, default_value = "chaoscert-demo")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct WordsArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Word length.
    #[arg(long, default_value_t = 4)]
    pub length: usize,
    /// Print only the counts for lengths 1..=length.
    #[arg(long)]
    pub count_only: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Runs a parsed command, writing the main output to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Check(a) => cmd_check(&a, out),
        Command::Build(a) => cmd_build(&a, out),
        Command::Df(a) => cmd_df(&a, out),
        Command::Demo(a) => cmd_demo(&a, out),
        Command::Words(a) => cmd_words(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Parses `std::env::args` and runs.
pub fn main() -> std::process::ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return std::process::ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let code = run(
        cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::ExitCode::from(code)
}
