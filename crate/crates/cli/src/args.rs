use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::builtin::Builtin;
use crate::points::{range_list, values_list, List};

#[derive(Debug, Parser)]
#[command(
    name = "sgfrac",
    version,
    about = "Riemann-Liouville fractional integrals through shifted Gegenbauer integration matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximate the fractional integral of a builtin function or a samples file
    Eval(EvalArgs),
    /// Precompute an integration matrix and save it
    Matrix(MatrixArgs),
    /// Apply a saved integration matrix to a samples file
    Apply(ApplyArgs),
    /// Sample a builtin function at the nodes of a grid
    Sample(SampleArgs),
    /// Error against the closed form while one parameter varies
    Sweep(SweepArgs),
    /// Run the acceptance suite
    Bench(BenchArgs),
    /// Recommend Gegenbauer indices for the interpolant and the quadrature
    Advise(AdviseArgs),
    /// Computable terms of the error analysis for one setting, as JSON
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Points {
    /// Evaluation points in [0, 1], comma separated
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    /// `a:b:m`, m equally spaced points from a to b inclusive
    #[arg(long, value_parser = range_list)]
    pub range: Option<List>,
}

impl Points {
    pub fn list(&self) -> Vec<f64> {
        self.range.clone().map_or_else(|| self.t.clone(), |l| l.0)
    }
}

#[derive(Debug, Args)]
pub struct Quad {
    /// Quadrature degree (n_q + 1 nodes)
    #[arg(long = "nq", default_value_t = 16)]
    pub n_q: usize,
    /// Gegenbauer index of the quadrature nodes
    #[arg(long = "lambdaq", default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda_q: f64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Builtin function: power:N, exp:k, cubic8t or sin1mt
    #[arg(long = "fn", conflicts_with = "samples", required_unless_present = "samples")]
    pub func: Option<Builtin>,
    /// Samples file written by `sgfrac sample`
    #[arg(long)]
    pub samples: Option<PathBuf>,
    /// Fractional order in (0, 1)
    #[arg(long)]
    pub alpha: f64,
    /// Interpolation degree (n + 1 nodes); defaults to 16, or the samples file's grid
    #[arg(long)]
    pub n: Option<usize>,
    /// Gegenbauer index of the interpolation grid; defaults to 0, or the samples file's grid
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[command(flatten)]
    pub quad: Quad,
    #[command(flatten)]
    pub points: Points,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct Grid {
    /// Interpolation degree (n + 1 nodes)
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    /// Gegenbauer index of the interpolation grid
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long)]
    pub alpha: f64,
    #[command(flatten)]
    pub grid: Grid,
    #[command(flatten)]
    pub quad: Quad,
    #[command(flatten)]
    pub points: Points,
    /// Destination of the binary matrix file
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    /// Matrix file written by `sgfrac matrix`
    #[arg(long)]
    pub matrix: PathBuf,
    /// Samples file written by `sgfrac sample`
    #[arg(long)]
    pub samples: PathBuf,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long = "fn")]
    pub func: Builtin,
    #[command(flatten)]
    pub grid: Grid,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    N,
    Nq,
    Lambda,
    Lambdaq,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::N => "n",
            SweepParam::Nq => "nq",
            SweepParam::Lambda => "lambda",
            SweepParam::Lambdaq => "lambdaq",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long = "fn")]
    pub func: Builtin,
    #[arg(long)]
    pub alpha: f64,
    /// Evaluation point
    #[arg(long)]
    pub t: f64,
    /// Parameter to vary
    #[arg(long, value_enum)]
    pub over: SweepParam,
    /// `a..b` (integers), `a:b:m` or a comma list
    #[arg(long, value_parser = values_list, allow_hyphen_values = true)]
    pub values: List,
    #[command(flatten)]
    pub grid: Grid,
    #[command(flatten)]
    pub quad: Quad,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Run only these criteria (repeatable)
    #[arg(long)]
    pub criterion: Vec<String>,
    /// Print the machine-readable report instead of the table
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Standard,
    Precision,
}

#[derive(Debug, Args)]
pub struct AdviseArgs {
    #[arg(long, value_enum, default_value_t = Mode::Standard)]
    pub mode: Mode,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long = "nq", default_value_t = 16)]
    pub n_q: usize,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub alpha: f64,
    #[command(flatten)]
    pub grid: Grid,
    #[command(flatten)]
    pub quad: Quad,
    /// Evaluation point
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Mean-value point of the quadrature remainder, in (0, 1)
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    /// Bound on the (n+1)-th derivative of f
    #[arg(long, default_value_t = 1.0)]
    pub deriv_bound: f64,
    /// Bound on |f|
    #[arg(long, default_value_t = 1.0)]
    pub sup_f: f64,
}
