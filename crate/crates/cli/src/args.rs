use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qramp", version, about = "Quantum ramp secret sharing from nested linear codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a scheme file from a construction spec
    Build(BuildArgs),
    /// Classify subsets of participants
    Analyze(AnalyzeArgs),
    /// Check closed forms against state simulation
    Verify(VerifyArgs),
    /// Encode a secret and run the decoder of one subset
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

/// Where the scheme comes from: a scheme file, a spec file or an inline spec.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Scheme JSON written by `build`
    #[arg(long, value_name = "FILE")]
    pub scheme: Option<PathBuf>,
    /// Construction spec JSON
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Construction spec given inline
    #[arg(long, value_name = "JSON")]
    pub inline: Option<String>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: Source,
    /// Write the scheme here instead of stdout
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Selector {
    /// A single subset, 1-based, e.g. 1,2,3
    #[arg(long, value_name = "LIST", conflicts_with = "all")]
    pub subset: Option<String>,
    /// Every subset of participants
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub selector: Selector,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum CheckKind {
    /// Three qualified-set criteria agree
    Routes,
    /// Holevo information from density matrices equals the closed form
    Holevo,
    /// Coherent information from density matrices equals the closed form
    Coherent,
    /// Encoding preserves inner products
    Isometry,
    /// Decoder recovers the reconstructible part of product secrets
    Decode,
    /// Forbidden sets see the same state for every secret
    Forbidden,
    /// Curve thresholds and function-space qudit counts (curve schemes only)
    Theorem,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub selector: Selector,
    /// Comma-separated checks; all by default
    #[arg(long, value_enum, value_delimiter = ',')]
    pub checks: Vec<CheckKind>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: Source,
    /// Participants running the decoder, 1-based, e.g. 1,2,3
    #[arg(long, value_name = "LIST")]
    pub subset: String,
    /// Secret state JSON; a random secret is drawn otherwise
    #[arg(long, value_name = "FILE", conflicts_with = "product")]
    pub secret: Option<PathBuf>,
    /// Draw a random product secret (reconstructible part times the rest)
    #[arg(long)]
    pub product: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the state after the decoder here
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}
