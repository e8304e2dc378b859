//! Command-line arguments, which double as the JSON job file format.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "pfzero",
    version,
    about = "Picard-Fuchs systems and zero bounds for Abelian integrals"
)]
pub struct Cli {
    /// Read the job from a JSON file instead of the command line.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

/// A job read with `--config`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobConfig {
    #[serde(default)]
    pub schema_version: Option<u32>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Degree, regularity at infinity, critical values and monomial basis.
    Analyze(HArgs),
    /// Write a one-form as a combination of basis forms plus dA + B dH.
    Decompose(DecomposeArgs),
    /// Matrices K, L and the system I' = (A/a) I.
    PfSystem(HArgs),
    /// Scalar equation for one period or a combination of periods.
    ScalarOde(OdeArgs),
    /// Bound (and optionally count) zeros of a period in a simple domain.
    CountZeros(CountArgs),
    /// Check the system against periods computed by quadrature.
    Verify(VerifyArgs),
    /// Continue periods along a path in t, as CSV.
    Periods(PeriodsArgs),
    /// Evaluate the closed-form asymptotic bounds.
    Bounds(BoundsArgs),
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct HArgs {
    /// The Hamiltonian, e.g. "x^3 - x*y^2 + y".
    #[arg(short = 'H', long = "hamiltonian")]
    pub hamiltonian: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct DecomposeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub h: HArgs,
    /// Coefficient P of P dx + Q dy.
    #[arg(long)]
    pub p: Option<String>,
    /// Coefficient Q of P dx + Q dy.
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct OdeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub h: HArgs,
    /// Index of the basis period.
    #[arg(short = 'm', long)]
    pub component: Option<usize>,
    /// Weights of a combination of the basis periods, comma separated
    /// rationals; overrides --component.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mu: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct CountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub ode: OdeArgs,
    /// `disc:cx,cy,r` or `poly:x1,y1;x2,y2;...`
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    #[arg(long)]
    pub rho: Option<f64>,
    /// `auto` or `angles:a1,a2,...` in radians, one per critical value.
    #[arg(long, allow_hyphen_values = true)]
    pub rays: Option<String>,
    /// `bound`, `numeric` or `both`.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Allow regions reaching outside the unit disc.
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub h: HArgs,
    /// Comma separated real levels.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub samples: Option<Vec<f64>>,
    /// `auto`, `oval:x,y` or `candidate:k`.
    #[arg(long, allow_hyphen_values = true)]
    pub cycle: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct PeriodsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub h: HArgs,
    /// Vertices `re,im;re,im;...` of the path in t.
    #[arg(long, allow_hyphen_values = true)]
    pub path: Option<String>,
    /// `auto`, `oval:x,y` or `candidate:k`.
    #[arg(long, allow_hyphen_values = true)]
    pub cycle: Option<String>,
    /// Extra samples per path edge.
    #[arg(long)]
    pub subdivisions: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct BoundsArgs {
    #[arg(short = 'd', long)]
    pub degree: Option<usize>,
    /// Rational or decimal in (0, 1).
    #[arg(long)]
    pub rho: Option<String>,
    #[arg(short = 'c', long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub c_p: Option<f64>,
    /// Order of the equation.
    #[arg(short = 'n', long)]
    pub order: Option<usize>,
    /// Coefficient size bound M.
    #[arg(short = 'M', long)]
    pub m: Option<String>,
    #[arg(short = 'p', long)]
    pub p: Option<usize>,
}
