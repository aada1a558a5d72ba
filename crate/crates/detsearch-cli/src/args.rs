//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "detsearch",
    version,
    about = "Statevector search simulator with a deterministic planner",
    long_about = "Simulates Grover-style search on an exact statevector. The deterministic \
                  mode plans its iteration count in closed form and, when needed, attaches an \
                  auxiliary qubit so a target state is measured with certainty."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the deterministic iteration plan for a given initial success probability
    Plan(PlanArgs),
    /// Run a single search and report the final probability distribution
    Run(RunArgs),
    /// Tabulate closed-form standard vs simulated deterministic success over a p grid
    Sweep(SweepArgs),
    /// Find every target exactly once: one deterministic execution per target
    Multi(MultiArgs),
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    /// Initial success probability, 0 < p < 1
    #[arg(long)]
    pub p: f64,
    /// Tolerance within which the raw iteration count counts as a natural number
    #[arg(long, default_value_t = detsearch_core::DEFAULT_NATURAL_TOLERANCE)]
    pub tolerance: f64,
    /// Write the result here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Number of data qubits (search space size 2^n)
    #[arg(long)]
    pub qubits: usize,
    /// Comma-separated targets: big-endian bitstrings of length --qubits, or decimal indices
    #[arg(long, value_delimiter = ',', required = true)]
    pub targets: Vec<String>,
    /// Search driver to run
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Iteration count for standard mode (default: raw count rounded to nearest)
    #[arg(long)]
    pub iterations: Option<u64>,
    /// JSON file with the initial amplitudes as [re, im] pairs (default: uniform start)
    #[arg(long)]
    pub amplitudes: Option<PathBuf>,
    /// Seed for the measurement sampler
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include per-stage amplitude snapshots (signs show the oracle phase flips)
    #[arg(long)]
    pub trace: bool,
    /// Write the result here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// First grid point, 0 < start < end
    #[arg(long)]
    pub start: f64,
    /// Last grid point, start < end < 1
    #[arg(long)]
    pub end: f64,
    /// Number of grid points including both endpoints
    #[arg(long)]
    pub points: usize,
    /// Write the result here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct MultiArgs {
    /// Number of data qubits (search space size 2^n)
    #[arg(long)]
    pub qubits: usize,
    /// Comma-separated targets: big-endian bitstrings of length --qubits, or decimal indices
    #[arg(long, value_delimiter = ',', required = true)]
    pub targets: Vec<String>,
    /// Seed for the measurement samplers (execution j uses seed + j)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Standard,
    Deterministic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}
