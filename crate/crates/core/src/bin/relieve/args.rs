use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use relieve_core::relief::Iterations;

#[derive(Debug, Parser)]
#[command(name = "relieve", version, about = "Feature weighting workbench")]
pub struct Cli {
    /// Seed for every stochastic step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output file (stdout when omitted; required by `gen`).
    #[arg(short = 'o', long, global = true)]
    pub out: Option<PathBuf>,

    /// Suppress log messages.
    #[arg(short, long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic dataset with a ground-truth sidecar.
    Gen {
        #[command(subcommand)]
        generator: Generator,
    },
    /// Weigh the features of a dataset.
    Weigh(WeighArgs),
    /// Score a weight file against ground truth.
    Eval {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        truth: PathBuf,
    },
    /// 1-NN cross-validated accuracy over weight-ordered feature subsets.
    KnnCurve {
        #[arg(long)]
        data: String,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long, default_value_t = 5)]
        folds: usize,
        #[arg(long)]
        schema: Option<PathBuf>,
    },
    /// Redundancy level of one feature by exhaustive subset search.
    Redundancy(RedundancyArgs),
}

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// Class = sum of the important features modulo p.
    Modulo {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        important: usize,
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long)]
        n: usize,
    },
    /// (A0 and A1) or (B0 and B1), with a 75%-correlated and a random feature.
    Corral {
        #[arg(long, required_unless_present = "exhaustive")]
        n: Option<usize>,
        /// The canonical 64-row set instead of a random sample.
        #[arg(long, conflicts_with = "n")]
        exhaustive: bool,
    },
    /// Seven-segment LED digits with optional irrelevant features.
    Led {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 17)]
        irrelevant: usize,
        #[arg(long, default_value_t = 0.1)]
        noise: f64,
    },
    /// Monk-1 or Monk-3.
    Monk {
        #[arg(long)]
        which: u8,
        #[arg(long, required_unless_present = "exhaustive")]
        n: Option<usize>,
        /// All 432 attribute configurations instead of a random sample.
        #[arg(long, conflicts_with = "n")]
        exhaustive: bool,
        /// Class flip probability (default 0 for Monk-1, 0.05 for Monk-3).
        #[arg(long)]
        noise: Option<f64>,
    },
}

#[derive(Debug, Args)]
pub struct WeighArgs {
    #[arg(long)]
    pub algorithm: String,
    /// CSV file, or `uci:<name>` for a dataset in the cache directory.
    #[arg(long)]
    pub data: String,
    /// Schema sidecar; `<stem>.schema.json` next to the data is used if present.
    #[arg(long)]
    pub schema: Option<PathBuf>,
    #[arg(long, default_value_t = relieve_core::relief::DEFAULT_K)]
    pub k: usize,
    /// Iterations: a count or `all`.
    #[arg(long, default_value = "all", value_parser = parse_iterations)]
    pub m: Iterations,
    /// Fixed steepness exponent for pdrelieff.
    #[arg(long = "T", conflicts_with = "auto_t")]
    pub t: Option<f64>,
    /// Steepness 2 / ln m (the default).
    #[arg(long = "auto-T")]
    pub auto_t: bool,
    /// Probability-based difference for missing values.
    #[arg(long)]
    pub relief_d: bool,
    /// Add-one smoothing of the tables used by `--relief-d`.
    #[arg(long, requires = "relief_d")]
    pub laplace: bool,
    /// Positive value for PCF and binary CCF.
    #[arg(long)]
    pub positive: Option<String>,
    /// Class reported by PCF.
    #[arg(long)]
    pub class: Option<String>,
    /// Classic VDM with P(c|x) in place of P(x|c)/P(x).
    #[arg(long)]
    pub vdm_classic: bool,
}

#[derive(Debug, Args)]
pub struct RedundancyArgs {
    #[arg(long)]
    pub data: String,
    #[arg(long)]
    pub feature: String,
    /// Comma-separated variables (features or the class); all by default.
    #[arg(long, value_delimiter = ',')]
    pub universe: Option<Vec<String>>,
    #[arg(long, default_value_t = relieve_core::redundancy::DEFAULT_CAP)]
    pub cap: usize,
    /// Search even when the universe exceeds the cap.
    #[arg(long)]
    pub force: bool,
    /// Maximize the discrepancy instead of minimizing it.
    #[arg(long)]
    pub as_printed: bool,
    #[arg(long, default_value_t = relieve_core::redundancy::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long)]
    pub schema: Option<PathBuf>,
}

fn parse_iterations(s: &str) -> Result<Iterations, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Iterations::All);
    }
    s.parse::<usize>()
        .map(Iterations::Count)
        .map_err(|_| format!("expected a positive integer or `all`, got `{s}`"))
}
