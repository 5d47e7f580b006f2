//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(
    name = "grandlab",
    version,
    about = "Guess-based decoding laboratory: simulation, single-shot decoding and analytics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Monte Carlo campaign over one or more Eb/N0 points; writes CSV
    /// reports and a reproducible run manifest.
    Simulate(SimulateArgs),
    /// Decode a single LLR vector and print the outcome as JSON.
    Decode(DecodeArgs),
    /// Tabulate the analytic RMRE distribution (optionally with a paired
    /// empirical column).
    AnalyzeRmre(AnalyzeArgs),
    /// Construct a BCH code and write its parity-check matrix plus a
    /// JSON sidecar.
    GenCode(GenCodeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinCode {
    Hamming74,
    #[value(name = "bch127_113", alias = "bch127-113")]
    Bch127_113,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormatArg {
    Dense,
    Alist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderArg {
    Orbgrand,
    #[value(name = "elim_full", alias = "elim-full")]
    ElimFull,
    #[value(name = "elim_reduced", alias = "elim-reduced")]
    ElimReduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MessageModeArg {
    #[value(name = "all_zero", alias = "all-zero")]
    AllZero,
    Random,
}

#[derive(Args, Debug, Clone)]
pub struct CodeSource {
    /// Built-in code.
    #[arg(long, value_enum, conflicts_with = "matrix")]
    pub code: Option<BuiltinCode>,
    /// Parity-check matrix file.
    #[arg(long)]
    pub matrix: Option<std::path::PathBuf>,
    /// Matrix file format.
    #[arg(long, value_enum, default_value = "dense")]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: CodeSource,
    /// Eb/N0 points in dB, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "from_manifest")]
    pub ebn0: Vec<f64>,
    /// Guess budget T (size of the pre-stored pattern list).
    #[arg(long, default_value_t = 50_000)]
    pub budget: usize,
    /// Fixed number of trials per point.
    #[arg(long, conflicts_with = "min_errors")]
    pub trials: Option<u64>,
    /// Run until this many block errors (per point).
    #[arg(long)]
    pub min_errors: Option<u64>,
    /// Trial cap when --min-errors is used.
    #[arg(long, default_value_t = 10_000_000)]
    pub max_trials: u64,
    /// Run seed; falls back to $GRANDLAB_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Decoders to run, comma separated.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "orbgrand,elim_full,elim_reduced"
    )]
    pub decoders: Vec<DecoderArg>,
    /// External pattern-order file (one comma-separated ascending flip
    /// list per line; line number = priority).
    #[arg(long)]
    pub ep_order: Option<std::path::PathBuf>,
    /// Output directory.
    #[arg(long, required_unless_present = "from_manifest")]
    pub out: Option<std::path::PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Message selection.
    #[arg(long, value_enum, default_value = "all_zero")]
    pub message_mode: MessageModeArg,
    /// On abandonment, emit the lightest elimination-found solution
    /// instead of failing (breaks strict plain-scan equivalence).
    #[arg(long)]
    pub emit_ge_solution_on_abandon: bool,
    /// Re-run an earlier campaign from its manifest (other flags except
    /// --out and --threads are ignored).
    #[arg(long)]
    pub from_manifest: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub source: CodeSource,
    /// Inline LLR list, comma separated.
    #[arg(long, conflicts_with = "llr_file")]
    pub llrs: Option<String>,
    /// File of whitespace-separated LLR values.
    #[arg(long)]
    pub llr_file: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "elim_reduced")]
    pub decoder: DecoderArg,
    /// Guess budget T.
    #[arg(long, default_value_t = 50_000)]
    pub budget: usize,
    #[arg(long)]
    pub ep_order: Option<std::path::PathBuf>,
    #[arg(long)]
    pub emit_ge_solution_on_abandon: bool,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Code length N (requires --rate).
    #[arg(long, conflicts_with_all = ["code", "matrix"])]
    pub n: Option<usize>,
    /// Code rate K/N (with --n).
    #[arg(long)]
    pub rate: Option<f64>,
    #[command(flatten)]
    pub source: CodeSource,
    #[arg(long, value_delimiter = ',', required = true)]
    pub ebn0: Vec<f64>,
    #[arg(long, required = true)]
    pub out: std::path::PathBuf,
    /// Add a paired Monte Carlo column.
    #[arg(long)]
    pub empirical: bool,
    /// Trials for the empirical column.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct GenCodeArgs {
    /// Field extension degree m.
    #[arg(long)]
    pub m: u32,
    /// Code length, must equal 2^m - 1.
    #[arg(long)]
    pub n: usize,
    /// Designed error-correction capability t.
    #[arg(long)]
    pub t: usize,
    #[arg(long, required = true)]
    pub out: std::path::PathBuf,
    #[arg(long, value_enum, default_value = "dense")]
    pub format: FormatArg,
}

/// Seed resolution: flag, then $GRANDLAB_SEED, then 0.
pub fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("GRANDLAB_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}
