use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::input::ExtensionTag;

#[derive(Debug, Parser)]
#[command(name = "halflap", version, about = "Half Laplacian on the real line: apply, sweep, bench, verify")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the operator to a named function or a sample file and print `x, s, value` rows.
    Apply(ApplyArgs),
    /// Error sweep over N and L against the exact half Laplacian.
    Sweep(SweepArgs),
    /// Timing per N, with repeats.
    Bench(BenchArgs),
    /// Run the oracle suites and report pass/fail.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    /// Named test function (quartic, inv_sqrt, arctan, odd_sqrt, erf).
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub function: Option<String>,
    /// File with 2N lines `re im`, samples on the full-period grid.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub l: f64,
    /// Defaults to the function's recommended extension.
    #[arg(long, value_enum, conflicts_with = "input")]
    pub extension: Option<ExtensionTag>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub krasny_eps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub function: String,
    /// Comma list; items may be `2^a` or `2^a..2^b`.
    #[arg(long)]
    pub n: String,
    /// Comma list of map scales.
    #[arg(long, conflicts_with = "l_range", required_unless_present = "l_range")]
    pub l: Option<String>,
    /// `start:stop:step`, inclusive.
    #[arg(long)]
    pub l_range: Option<String>,
    #[arg(long, value_enum)]
    pub extension: Option<ExtensionTag>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write error-vs-L blocks, one per N, for gnuplot.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub krasny_eps: Option<f64>,
    /// Write 0 in the runtime column so output is byte-reproducible.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "quartic")]
    pub function: String,
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = 1.1)]
    pub l: f64,
    #[arg(long, value_enum)]
    pub extension: Option<ExtensionTag>,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub krasny_eps: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::Fast)]
    pub level: Level,
    #[arg(long, default_value_t = 20240601)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
}
