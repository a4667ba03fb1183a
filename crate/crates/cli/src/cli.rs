//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use interflow_core::network::Direction;

use crate::tracefile::TraceFormat;

#[derive(Debug, Parser)]
#[command(
    name = "interflow",
    version,
    about = "Interaction networks and critical-parameter selection for multi-agent positional traces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute per-game transfer-entropy matrices from trace files.
    Te(TeArgs),
    /// Aggregate matrices (or traces) into an interaction diagram and print the hub.
    Diagram(DiagramArgs),
    /// Estimate the Fisher curve over a sweep directory and select theta*.
    Fisher(FisherArgs),
    /// Generate one synthetic game from a scenario config.
    Simulate(SimulateArgs),
    /// Generate a theta-labeled sweep of synthetic games.
    Sweep(SweepArgs),
    /// Summarize a diagram and a Fisher curve into a text report with plot data.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    /// Opponent team Y drives our team X.
    Y2x,
    /// Team X drives team Y.
    X2y,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Direction {
        match d {
            DirectionArg::Y2x => Direction::YToX,
            DirectionArg::X2y => Direction::XToY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Jsonl,
}

impl From<FormatArg> for TraceFormat {
    fn from(f: FormatArg) -> TraceFormat {
        match f {
            FormatArg::Csv => TraceFormat::Csv,
            FormatArg::Jsonl => TraceFormat::Jsonl,
        }
    }
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err("must be finite and >= 0".into())
    }
}

fn parse_beta(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err("must be finite and >= 0".into())
    }
}

/// Symbolization flags shared by the analysis commands.
#[derive(Debug, Args)]
pub struct SymbolizerOpts {
    /// Stationary threshold in meters; smaller displacements map to the
    /// stationary symbol.
    #[arg(long, default_value_t = 0.05, value_parser = parse_epsilon)]
    pub epsilon: f64,
    /// Number of angular direction sectors in the motion alphabet.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u8).range(2..=254))]
    pub sectors: u8,
}

/// Estimator flags shared by the analysis commands.
#[derive(Debug, Args)]
pub struct EstimatorOpts {
    /// Target-history length k of the transfer-entropy estimator.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct TeArgs {
    /// Trace files (CSV or JSONL), one game per file.
    #[arg(required = true, value_name = "TRACE")]
    pub traces: Vec<PathBuf>,
    #[command(flatten)]
    pub sym: SymbolizerOpts,
    #[command(flatten)]
    pub est: EstimatorOpts,
    /// Link direction to estimate.
    #[arg(long, value_enum, default_value_t = DirectionArg::Y2x)]
    pub direction: DirectionArg,
    /// Input format override; otherwise inferred per file extension.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    /// Either matrix JSON files from `te`, or trace files to analyze directly.
    #[arg(required = true, value_name = "INPUT")]
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub sym: SymbolizerOpts,
    #[command(flatten)]
    pub est: EstimatorOpts,
    /// Link direction (only used when inputs are traces).
    #[arg(long, value_enum, default_value_t = DirectionArg::Y2x)]
    pub direction: DirectionArg,
    /// Input trace format override.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FisherArgs {
    /// Sweep directory containing theta=<value> subdirectories of traces.
    #[arg(long, value_name = "DIR")]
    pub sweep_dir: PathBuf,
    /// Hub agent index whose motion distribution is analyzed.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=11))]
    pub hub: u8,
    /// Additive smoothing constant for the symbol distribution.
    #[arg(long, default_value_t = 0.5, value_parser = parse_beta)]
    pub beta: f64,
    #[command(flatten)]
    pub sym: SymbolizerOpts,
    /// Direction the hub was selected under; fixes which team the hub
    /// belongs to (y2x puts it on team X).
    #[arg(long, value_enum, default_value_t = DirectionArg::Y2x)]
    pub direction: DirectionArg,
    /// Parameter name used in the outputs.
    #[arg(long, default_value = "theta")]
    pub label: String,
    /// Input trace format override.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scenario config file (TOML key-value).
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,
    /// Simulation seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep config file (TOML key-value with theta_grid and games_per_theta).
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,
    /// Base seed; per-game seeds are derived from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory; games land in theta=<value>/game_<n>.csv.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Diagram JSON produced by `diagram`.
    #[arg(long, value_name = "FILE")]
    pub diagram: PathBuf,
    /// Fisher JSON produced by `fisher`.
    #[arg(long, value_name = "FILE")]
    pub fisher: PathBuf,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}
