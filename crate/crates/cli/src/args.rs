use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mollify", version, about = "Verification suite for mollified zeta moments at desk scale")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Options every subcommand accepts.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Report format; each command has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Cap on worker threads.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Neither read nor write the cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Vaughan identity coefficientwise on n ≤ N.
    VerifyVaughan(VaughanArgs),
    /// Compare the direct and character-rearranged twisted sums.
    VerifyRearrangement(RearrangementArgs),
    /// Check divisor splitting on randomly chosen decomposition terms.
    VerifySplit(SplitArgs),
    /// Mollified first and second moments over the zeros up to T.
    Moments(MomentsArgs),
    /// Maximize S1²/S2 over polynomials of a given degree.
    OptimizePoly(OptimizeArgs),
    /// Compute or ingest a table of zero ordinates.
    #[command(subcommand)]
    Zeros(ZerosCommand),
    /// Run the hybrid large sieve monitor on random coefficient vectors.
    MonitorSieve(SieveArgs),
    /// Print κ* and the distinct-zero proportion derived from it.
    ReportKappa(KappaArgs),
}

#[derive(Debug, Args)]
pub struct VaughanArgs {
    #[arg(long, default_value_t = 3)]
    pub r: u32,
    #[arg(long = "X", default_value_t = 10.0)]
    pub x: f64,
    /// Defaults to min(X^r, 10⁵).
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct RearrangementArgs {
    #[arg(long, default_value_t = 1)]
    pub nu: u32,
    #[arg(long, default_value_t = 20.0)]
    pub y: f64,
    #[arg(long = "T", default_value_t = 300.0)]
    pub t: f64,
    /// Comma-separated c₁,…,c_d; defaults to the quadratic for ϑ = log y/log T.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub poly: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    #[arg(long, default_value_t = 20.0)]
    pub y: f64,
    #[arg(long = "T", default_value_t = 1e4)]
    pub t: f64,
    #[arg(long = "X", default_value_t = 10.0)]
    pub x: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub poly: Option<Vec<f64>>,
    /// Support cap for the decomposition.
    #[arg(long, default_value_t = 1000)]
    pub n_cap: usize,
    #[arg(long, default_value_t = 30)]
    pub d_max: u64,
    #[arg(long, default_value_t = 1000)]
    pub m_max: u64,
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long = "T", default_value_t = 1000.0)]
    pub t: f64,
    #[arg(long, default_value_t = 0.3)]
    pub theta: f64,
    /// Comma-separated c₁,…,c_d; defaults to −ϑx² + (1+ϑ)x.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub poly: Option<Vec<f64>>,
    /// Mollifier length; overrides T^ϑ.
    #[arg(long)]
    pub y: Option<f64>,
    /// Zero table path, or `compute`.
    #[arg(long, default_value = "compute")]
    pub zeros: String,
    /// Target band for the empirical/predicted ratios.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0.8, 1.2])]
    pub band: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum ZerosCommand {
    /// Locate all zeros with 0 < γ ≤ T.
    Find(ZerosFindArgs),
    /// Validate an external table against computed zeros.
    Ingest(ZerosIngestArgs),
}

#[derive(Debug, Args)]
pub struct ZerosFindArgs {
    /// With `--output`, the table goes to that file and the summary to stdout.
    #[arg(long = "T", default_value_t = 1000.0)]
    pub t: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ZerosIngestArgs {
    #[arg(long)]
    pub zeros: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SieveArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 20)]
    pub q_max: u64,
    #[arg(long, default_value_t = 200)]
    pub h_max: usize,
    #[arg(long, default_value_t = 20.0)]
    pub v_max: f64,
    /// Largest acceptable lhs/rhs ratio.
    #[arg(long, default_value_t = 6.0)]
    pub ratio_limit: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct KappaArgs {
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Mean-multiplicity bound fed into the distinct-zero proportion.
    #[arg(long, default_value_t = mollify_core::mollifier::MULTIPLICITY_MEAN_BOUND)]
    pub multiplicity_bound: f64,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::VerifyVaughan(a) => &a.common,
            Command::VerifyRearrangement(a) => &a.common,
            Command::VerifySplit(a) => &a.common,
            Command::Moments(a) => &a.common,
            Command::OptimizePoly(a) => &a.common,
            Command::Zeros(ZerosCommand::Find(a)) => &a.common,
            Command::Zeros(ZerosCommand::Ingest(a)) => &a.common,
            Command::MonitorSieve(a) => &a.common,
            Command::ReportKappa(a) => &a.common,
        }
    }
}
