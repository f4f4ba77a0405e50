//! Rolling-window evaluation of the portmanteau tests.

use crate::error::{Error, Result};
use crate::ingest::ReturnSeries;
use crate::par::Exec;
use crate::portmanteau::{window_test, WindowConfig, WindowResult};
use serde::{Deserialize, Serialize};

/// Per-window records ordered by `end_index`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RollingResult {
    pub cfg: WindowConfig,
    pub stride: usize,
    pub records: Vec<WindowResult>,
    pub series_length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    /// `H_xx` (correlation) significance.
    Linear,
    /// `H_xxx` (bicorrelation) significance.
    Nonlinear,
}

impl std::str::FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Which::Linear),
            "nonlinear" => Ok(Which::Nonlinear),
            other => Err(Error::InvalidConfig(format!(
                "expected 'linear' or 'nonlinear', got '{other}'"
            ))),
        }
    }
}

/// Slides the window one observation at a time.
pub fn roll(r: &ReturnSeries, cfg: &WindowConfig) -> Result<RollingResult> {
    roll_with(r, cfg, 1, Exec::default())
}

/// Single-threaded reference path.
pub fn roll_sequential(r: &ReturnSeries, cfg: &WindowConfig) -> Result<RollingResult> {
    roll_with(r, cfg, 1, Exec::Sequential)
}

/// Evaluates every `stride`-th window position. Window `k` ends at
/// 1-based index `n + k * stride`.
pub fn roll_with(
    r: &ReturnSeries,
    cfg: &WindowConfig,
    stride: usize,
    exec: Exec,
) -> Result<RollingResult> {
    cfg.validate()?;
    if stride == 0 {
        return Err(Error::InvalidConfig("stride must be at least 1".into()));
    }
    let len = r.len();
    if len < cfg.n {
        return Err(Error::SeriesTooShort { len, n: cfg.n });
    }
    let count = (len - cfg.n) / stride + 1;
    let x = &r.returns;
    let results = exec.map(count, |k| {
        let end = cfg.n + k * stride;
        window_test(&x[end - cfg.n..end], cfg, end)
    });
    let records = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(RollingResult {
        cfg: *cfg,
        stride,
        records,
        series_length: len,
    })
}

/// `true` where the chosen p-value is strictly below `alpha`.
pub fn significance_series(res: &RollingResult, which: Which, alpha: f64) -> Vec<bool> {
    significance_flags(&res.records, which, alpha)
}

pub fn significance_flags(records: &[WindowResult], which: Which, alpha: f64) -> Vec<bool> {
    records
        .iter()
        .map(|w| {
            !w.degenerate
                && match which {
                    Which::Linear => w.p_xx < alpha,
                    Which::Nonlinear => w.p_xxx < alpha,
                }
        })
        .collect()
}

/// Fraction of significant windows.
pub fn percent_significant(flags: &[bool]) -> Result<f64> {
    if flags.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(flags.iter().filter(|&&f| f).count() as f64 / flags.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{gaussian_series, GeneratorSpec};

    fn noise(len: usize, seed: u64) -> ReturnSeries {
        gaussian_series(&GeneratorSpec::gaussian(len, seed)).unwrap()
    }

    fn record(p_xx: f64, p_xxx: f64) -> WindowResult {
        WindowResult {
            end_index: 0,
            c_xx_lag1: 0.0,
            h_xx: 0.0,
            p_xx,
            ar_order: 1,
            h_xxx: 0.0,
            p_xxx,
            degenerate: false,
        }
    }

    #[test]
    fn record_count_and_indexing() {
        let res = roll(&noise(300, 1), &WindowConfig::new(256)).unwrap();
        assert_eq!(res.records.len(), 45);
        assert_eq!(res.records[0].end_index, 256);
        assert_eq!(res.records[44].end_index, 300);
        assert!(res.records.windows(2).all(|w| w[1].end_index == w[0].end_index + 1));
    }

    #[test]
    fn strided_indexing() {
        let res = roll_with(&noise(100, 1), &WindowConfig::new(16), 16, Exec::Sequential).unwrap();
        let ends: Vec<usize> = res.records.iter().map(|w| w.end_index).collect();
        assert_eq!(ends, vec![16, 32, 48, 64, 80, 96]);
    }

    #[test]
    fn too_short() {
        assert_eq!(
            roll(&noise(10, 1), &WindowConfig::new(16)),
            Err(Error::SeriesTooShort { len: 10, n: 16 })
        );
    }

    #[test]
    fn parallel_matches_sequential() {
        let r = noise(2_000, 8);
        let cfg = WindowConfig::new(64);
        let seq = roll_sequential(&r, &cfg).unwrap();
        let par = roll_with(&r, &cfg, 1, Exec::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(roll(&r, &cfg).unwrap(), seq);
    }

    #[test]
    fn threshold_rule() {
        let recs = [record(0.01, 1.0), record(0.2, 1.0), record(0.04, 1.0)];
        assert_eq!(
            significance_flags(&recs, Which::Linear, 0.05),
            vec![true, false, true]
        );
        assert_eq!(significance_flags(&[record(0.05, 0.05)], Which::Linear, 0.05), vec![false]);
        assert_eq!(significance_flags(&[record(0.05, 0.01)], Which::Nonlinear, 0.05), vec![true]);
        let mut deg = WindowResult::degenerate(4);
        deg.p_xx = 0.0;
        assert_eq!(significance_flags(&[deg], Which::Linear, 0.05), vec![false]);
        assert!(significance_flags(&[record(1.0, 1.0); 5], Which::Linear, 0.05)
            .iter()
            .all(|f| !f));
    }

    #[test]
    fn flags_nest_in_alpha() {
        let res = roll(&noise(3_000, 4), &WindowConfig::new(32)).unwrap();
        for which in [Which::Linear, Which::Nonlinear] {
            let tight = significance_series(&res, which, 0.01);
            let loose = significance_series(&res, which, 0.1);
            assert!(tight.iter().zip(&loose).all(|(t, l)| !t || *l));
        }
    }

    #[test]
    fn percentage() {
        assert_eq!(percent_significant(&[true, false, true, false]).unwrap(), 0.5);
        assert_eq!(percent_significant(&[]), Err(Error::EmptyInput));
    }
}
