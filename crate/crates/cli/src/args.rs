use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "acobs",
    version,
    about = "Residual sweeps of almost-complex structure identities over closed-form scenarios"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity suite on a scenario and report max/mean residuals.
    Verify(RunArgs),
    /// Emit one residual row per point and frame.
    Scan(ScanArgs),
    /// Evaluate the structure-equation bundle on an orthogonal scenario.
    Obstruct(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Records,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// round_sphere6, flat_torus6, hopf6, product_s2_cubed or perturbed_sphere6
    pub scenario: String,
    /// Scenario parameter, e.g. `r=2` or `eps=0.05`.
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,
    /// Restrict to these identities (repeatable).
    #[arg(long = "identity", value_name = "NAME")]
    pub identities: Vec<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Frames per sample point; frame 0 is (X, Y, AX, AY).
    #[arg(long)]
    pub frames: Option<usize>,
    /// Tolerance override (repeatable).
    #[arg(long = "tol", value_name = "NAME=V")]
    pub tol: Vec<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file with defaults; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Comma-separated perturbation sizes (perturbed_sphere6 only).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eps: Vec<f64>,
}
