use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err("must be at least 1".into())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "homogeo",
    version,
    about = "Homogeneous geodesic vectors, orthogonal sign families and Hadamard matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the subspace W and the 2^n sign rays of geodesic vectors.
    Classify(ClassifyArgs),
    /// Decide whether a vector `x_0..x_n z_1..z_n` is a geodesic vector.
    CheckVector(CheckVectorArgs),
    /// Build a largest set of mutually orthogonal geodesic vectors.
    MaxOrthogonal(MaxOrthogonalArgs),
    /// Construct or verify Hadamard matrices.
    Hadamard(HadamardArgs),
    /// Orbit traces and geodesic residuals.
    Geodesic(GeodesicArgs),
    /// One-shot summary for a given n.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelArgs {
    /// Family index; the group has dimension 2n + 1.
    #[arg(long, value_parser = positive_usize)]
    pub n: usize,
    /// Metric constant.
    #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
    pub lambda: f64,
    /// Relative tolerance of the geodesic criterion.
    #[arg(long, default_value_t = 1e-9, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchArgs {
    /// Branch-and-bound node limit (unlimited when omitted).
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Wall-clock limit for the search in seconds.
    #[arg(long, default_value_t = 600.0, value_parser = positive_f64)]
    pub budget_secs: f64,
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1, value_parser = positive_usize)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NumericArgs {
    /// Integration step.
    #[arg(long, default_value_t = 1e-3, value_parser = positive_f64)]
    pub step: f64,
    /// End of the time interval [0, t_max].
    #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
    pub t_max: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Seed for random probing around the classified set.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random probes (skipped for n > 10).
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CheckVectorArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Components x_0..x_n z_1..z_n, after `--`.
    #[arg(last = true, allow_negative_numbers = true, required = true)]
    pub vector: Vec<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MaxOrthogonalArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HadamardAction {
    Construct,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HadamardMethod {
    Sylvester,
    Paley,
    Kronecker,
}

impl HadamardMethod {
    pub fn name(&self) -> &'static str {
        match self {
            HadamardMethod::Sylvester => "sylvester",
            HadamardMethod::Paley => "paley",
            HadamardMethod::Kronecker => "kronecker",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HadamardArgs {
    #[arg(value_enum)]
    pub action: HadamardAction,
    /// Construction method (construct only).
    #[arg(long, value_enum, required_if_eq("action", "construct"))]
    pub method: Option<HadamardMethod>,
    /// Matrix order (construct only).
    #[arg(long, required_if_eq("action", "construct"), value_parser = positive_usize)]
    pub order: Option<usize>,
    /// Matrix file: written by construct, read by verify.
    #[arg(long, required_if_eq("action", "verify"))]
    pub file: Option<PathBuf>,
    /// Largest order the constructors will build.
    #[arg(long, default_value_t = 256, value_parser = positive_usize)]
    pub cap: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeodesicAction {
    Trace,
    Residual,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GeodesicArgs {
    #[arg(value_enum)]
    pub action: GeodesicAction,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub numeric: NumericArgs,
    /// Residual below which the orbit counts as a geodesic.
    #[arg(long, default_value_t = 1e-6, value_parser = positive_f64)]
    pub residual_tol: f64,
    /// Also write the orbit in the curve CSV format.
    #[arg(long)]
    pub orbit_csv: Option<PathBuf>,
    /// Also write the integrated geodesic in the curve CSV format.
    #[arg(long)]
    pub geodesic_csv: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Components x_0..x_n z_1..z_n, after `--`.
    #[arg(last = true, allow_negative_numbers = true, required = true)]
    pub vector: Vec<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReportArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}
