//! Price input, log returns and descriptive statistics.

use crate::error::{Error, Result};
use crate::portmanteau::chi_square_sf;
use serde::{Deserialize, Serialize};
use std::io::Read;

/// Nominal prices, optionally timestamped (epoch seconds).
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    pub timestamps: Option<Vec<i64>>,
    pub prices: Vec<f64>,
    pub label: String,
}

impl PriceSeries {
    pub fn new(prices: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        Self::with_timestamps(prices, None, label)
    }

    pub fn with_timestamps(
        prices: Vec<f64>,
        timestamps: Option<Vec<i64>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if prices.len() < 2 {
            return Err(Error::TooShort {
                needed: 2,
                got: prices.len(),
            });
        }
        if let Some(i) = prices.iter().position(|p| !(*p > 0.0) || !p.is_finite()) {
            return Err(Error::NonPositivePrice { line: i as u64 + 1 });
        }
        if let Some(ts) = &timestamps {
            if ts.len() != prices.len() {
                return Err(Error::InvalidConfig(
                    "timestamps and prices differ in length".into(),
                ));
            }
            if ts.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::InvalidConfig(
                    "timestamps must be strictly increasing".into(),
                ));
            }
        }
        Ok(Self {
            timestamps,
            prices,
            label: label.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.prices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prices.is_empty()
    }

    /// Synthetic prices `P(t) = exp(Σ_{s<t} r(s))` with `P(0) = 1`.
    pub fn from_returns(returns: &[f64], label: impl Into<String>) -> Result<Self> {
        let mut prices = Vec::with_capacity(returns.len() + 1);
        let mut level = 0.0;
        prices.push(1.0);
        for r in returns {
            level += r;
            prices.push(level.exp());
        }
        Self::new(prices, label)
    }
}

/// Log returns `R(t) = ln(P(t+1) / P(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    pub returns: Vec<f64>,
    pub label: String,
}

impl ReturnSeries {
    pub fn new(returns: Vec<f64>, label: impl Into<String>) -> Self {
        Self {
            returns,
            label: label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.returns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.returns.is_empty()
    }
}

/// Selects a CSV column by zero-based position or by header name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Column {
    Index(usize),
    Name(String),
}

impl std::str::FromStr for Column {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvOptions {
    pub delimiter: u8,
    pub has_header: bool,
    pub price_column: Column,
    pub timestamp_column: Option<Column>,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            delimiter: b',',
            has_header: false,
            price_column: Column::Index(0),
            timestamp_column: None,
        }
    }
}

fn resolve(col: &Column, headers: Option<&csv::StringRecord>) -> Result<usize> {
    match col {
        Column::Index(i) => Ok(*i),
        Column::Name(name) => headers
            .and_then(|h| h.iter().position(|f| f.trim() == name))
            .ok_or_else(|| Error::InvalidConfig(format!("column '{name}' not found in header"))),
    }
}

/// Reads a price series from delimited text. Errors carry 1-based line numbers.
pub fn parse_price_csv<R: Read>(source: R, options: &CsvOptions) -> Result<PriceSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(options.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = if options.has_header {
        Some(reader.headers()?.clone())
    } else {
        None
    };
    let price_idx = resolve(&options.price_column, headers.as_ref())?;
    let ts_idx = options
        .timestamp_column
        .as_ref()
        .map(|c| resolve(c, headers.as_ref()))
        .transpose()?;

    let mut prices = Vec::new();
    let mut stamps = ts_idx.map(|_| Vec::new());
    for record in reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let field = record.get(price_idx).ok_or_else(|| Error::MalformedRow {
            line,
            detail: format!("missing column {price_idx}"),
        })?;
        let price: f64 = field.parse().map_err(|_| Error::MalformedRow {
            line,
            detail: format!("cannot parse '{field}' as a number"),
        })?;
        if !price.is_finite() {
            return Err(Error::MalformedRow {
                line,
                detail: format!("non-finite price '{field}'"),
            });
        }
        if price <= 0.0 {
            return Err(Error::NonPositivePrice { line });
        }
        if let (Some(i), Some(ts)) = (ts_idx, stamps.as_mut()) {
            let field = record.get(i).ok_or_else(|| Error::MalformedRow {
                line,
                detail: format!("missing column {i}"),
            })?;
            let t: i64 = field.parse().map_err(|_| Error::MalformedRow {
                line,
                detail: format!("cannot parse timestamp '{field}'"),
            })?;
            ts.push(t);
        }
        prices.push(price);
    }
    if prices.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: prices.len(),
        });
    }
    PriceSeries::with_timestamps(prices, stamps, "")
}

pub fn log_returns(p: &PriceSeries) -> ReturnSeries {
    ReturnSeries::new(
        p.prices.windows(2).map(|w| (w[1] / w[0]).ln()).collect(),
        p.label.clone(),
    )
}

/// Descriptive statistics of a return series with the Jarque-Bera test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub max: f64,
    pub min: f64,
    /// Divide-by-(n-1) standard deviation.
    pub std_dev: f64,
    pub skewness: f64,
    /// Raw (non-excess) kurtosis; 3 for a Gaussian.
    pub kurtosis: f64,
    pub jb_statistic: f64,
    pub jb_pvalue: f64,
}

/// `JB = n/6 (S² + (K - 3)²/4)` with raw kurtosis `K`.
pub fn jarque_bera(count: usize, skewness: f64, kurtosis: f64) -> f64 {
    let excess = kurtosis - 3.0;
    count as f64 / 6.0 * (skewness * skewness + excess * excess / 4.0)
}

pub fn summary_stats(r: &ReturnSeries) -> Result<SummaryStats> {
    let x = &r.returns;
    if x.len() < 4 {
        return Err(Error::TooShort {
            needed: 4,
            got: x.len(),
        });
    }
    if x.windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::DegenerateSeries);
    }
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in x {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    let (m2, m3, m4) = (m2 / n, m3 / n, m4 / n);
    if !(m2 > 0.0) {
        return Err(Error::DegenerateSeries);
    }
    let skewness = m3 / m2.powf(1.5);
    let kurtosis = m4 / (m2 * m2);
    let jb_statistic = jarque_bera(x.len(), skewness, kurtosis);

    let mut sorted = x.clone();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len().is_multiple_of(2) {
        0.5 * (sorted[mid - 1] + sorted[mid])
    } else {
        sorted[mid]
    };

    Ok(SummaryStats {
        count: x.len(),
        mean,
        median,
        max: sorted[sorted.len() - 1],
        min: sorted[0],
        std_dev: (m2 * n / (n - 1.0)).sqrt(),
        skewness,
        kurtosis,
        jb_statistic,
        jb_pvalue: chi_square_sf(jb_statistic, 2)?,
    })
}
