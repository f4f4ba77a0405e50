use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use transcorr::ingest::{Column, CsvOptions};
use transcorr::rolling::Which;
use transcorr::synth::GeneratorKind;

#[derive(Debug, Clone, Parser, Serialize, Deserialize)]
#[command(name = "transcorr", version, about = "Rolling-window detection of transient serial dependence in return series")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GlobalArgs {
    /// Directory receiving every artifact and the run manifest [default: .]
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    /// Master seed for every stochastic component
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Encoding of tabular artifacts
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cmd {
    /// Summary statistics and Jarque-Bera test of the log returns
    Summary(SummaryArgs),
    /// Rolling correlation / bicorrelation tests, one file per window length
    Roll(RollArgs),
    /// Clusters of significant windows and their size CCDF
    Clusters(ClustersArgs),
    /// Discrete power-law fit of cluster sizes with bootstrap p-value
    Plfit(PlfitArgs),
    /// Correlation-sign predictions and hit rates
    Predict(PredictArgs),
    /// Synthetic Gaussian or AR series
    Simulate(SimulateArgs),
    /// Repeat a run recorded in a manifest
    Rerun(RerunArgs),
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Summary(_) => "summary",
            Cmd::Roll(_) => "roll",
            Cmd::Clusters(_) => "clusters",
            Cmd::Plfit(_) => "plfit",
            Cmd::Predict(_) => "predict",
            Cmd::Simulate(_) => "simulate",
            Cmd::Rerun(_) => "rerun",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PriceInput {
    /// Price file
    #[arg(long)]
    pub input: PathBuf,
    /// Field delimiter
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    /// The first row is a header
    #[arg(long)]
    pub header: bool,
    /// Price column, by zero-based index or header name
    #[arg(long, default_value = "0")]
    pub price_column: String,
    /// Optional timestamp column (epoch seconds)
    #[arg(long)]
    pub timestamp_column: Option<String>,
}

impl PriceInput {
    pub fn options(&self) -> Result<CsvOptions, String> {
        if !self.delimiter.is_ascii() {
            return Err(format!("delimiter '{}' is not ASCII", self.delimiter));
        }
        Ok(CsvOptions {
            delimiter: self.delimiter as u8,
            has_header: self.header,
            price_column: self.price_column.parse::<Column>().unwrap(),
            timestamp_column: self
                .timestamp_column
                .as_ref()
                .map(|c| c.parse::<Column>().unwrap()),
        })
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SummaryArgs {
    #[command(flatten)]
    pub input: PriceInput,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TestParams {
    /// Number of lags L
    #[arg(long = "L", alias = "lags", default_value_t = 2)]
    pub lags: usize,
    /// Significance level
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Largest AR order for prewhitening [default: min(n/4, 24)]
    #[arg(long)]
    pub ar_max_order: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RollArgs {
    #[command(flatten)]
    pub input: PriceInput,
    /// Window length(s); a comma-separated list produces one file per length
    #[arg(long, required = true, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[command(flatten)]
    pub params: TestParams,
    /// Step between evaluated windows
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ClustersArgs {
    /// Window-results file written by `roll`
    #[arg(long)]
    pub input: PathBuf,
    /// linear (H_xx) or nonlinear (H_xxx)
    #[arg(long, default_value = "linear")]
    pub which: Which,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PlfitArgs {
    /// Cluster file written by `clusters`
    #[arg(long)]
    pub input: PathBuf,
    /// Bootstrap repetitions
    #[arg(long, default_value_t = transcorr::powerlaw::DEFAULT_REPS)]
    pub reps: usize,
    /// Smallest tail a candidate x_min may leave
    #[arg(long, default_value_t = 10)]
    pub min_tail: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PredictArgs {
    #[command(flatten)]
    pub input: PriceInput,
    /// Window length
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub params: TestParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Gaussian,
    Ar,
}

impl From<Kind> for GeneratorKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Gaussian => GeneratorKind::Gaussian,
            Kind::Ar => GeneratorKind::Ar,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = Kind::Gaussian)]
    pub kind: Kind,
    /// Number of returns
    #[arg(long)]
    pub length: usize,
    /// AR coefficients a_1,...,a_p
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub ar_coeffs: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub innovation_sd: f64,
    /// Discarded leading samples [default: 0 for gaussian, max(10p, 100) for ar]
    #[arg(long)]
    pub burn_in: Option<usize>,
    /// Emit prices exp(cumsum(r)) starting at 1 instead of returns
    #[arg(long)]
    pub as_prices: bool,
    /// Output file name inside the output directory
    #[arg(long, default_value = "simulated.csv")]
    pub out: String,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RerunArgs {
    /// Manifest written by a previous run
    #[arg(long)]
    pub manifest: PathBuf,
}
