use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed row at line {line}: {detail}")]
    MalformedRow { line: u64, detail: String },
    #[error("non-positive price at line {line}")]
    NonPositivePrice { line: u64 },
    #[error("series too short: need at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("degenerate series: all returns are identical")]
    DegenerateSeries,
    #[error("degenerate window: zero variance")]
    DegenerateWindow,
    #[error("lag {lag} out of range for window of length {len}")]
    LagOutOfRange { lag: usize, len: usize },
    #[error("bicorrelation lags must satisfy r < s (got r={r}, s={s})")]
    LagOrderViolation { r: usize, s: usize },
    #[error("invalid degrees of freedom: {0}")]
    InvalidDof(u32),
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),
    #[error("series of length {len} is shorter than the window length {n}")]
    SeriesTooShort { len: usize, n: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("cluster table is empty")]
    EmptyTable,
    #[error("exponent {0} out of range, must exceed 1")]
    AlphaOutOfRange(f64),
    #[error("all samples are equal")]
    DegenerateSample,
    #[error("likelihood maximum lies on the search boundary at alpha = {0}")]
    NoInteriorMaximum(f64),
    #[error("no samples at or above x_min = {0}")]
    EmptyTail(u64),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("autoregressive coefficients are not stationary")]
    NonStationaryCoefficients,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("csv error: {0}")]
    Csv(String),
}

/// Coarse grouping used by front ends to choose exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad or unusable input data or parameters.
    Input,
    /// A statistical precondition was not met by otherwise valid data.
    Statistical,
    /// An internal numerical procedure broke down.
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::MalformedRow { .. }
            | Error::NonPositivePrice { .. }
            | Error::TooShort { .. }
            | Error::DegenerateSeries
            | Error::SeriesTooShort { .. }
            | Error::LagOutOfRange { .. }
            | Error::LagOrderViolation { .. }
            | Error::InvalidDof(_)
            | Error::AlphaOutOfRange(_)
            | Error::NonStationaryCoefficients
            | Error::InvalidConfig(_)
            | Error::Csv(_) => ErrorClass::Input,
            Error::DegenerateWindow
            | Error::EmptyInput
            | Error::EmptyTable
            | Error::DegenerateSample
            | Error::NoInteriorMaximum(_)
            | Error::EmptyTail(_)
            | Error::InsufficientData(_) => ErrorClass::Statistical,
            Error::NumericalBreakdown(_) => ErrorClass::Numerical,
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
