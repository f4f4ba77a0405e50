//! Window standardization and the correlation / bicorrelation kernels.
//!
//! The kernels accept any slice. Callers normally pass standardized values,
//! but nothing here depends on that.

use crate::error::{Error, Result};

/// A window rescaled to zero mean and unit (divide-by-n) standard deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedWindow {
    pub values: Vec<f64>,
    /// 1-based index of the window's last observation in the parent series.
    pub end_index: usize,
}

impl StandardizedWindow {
    pub fn with_end_index(mut self, end_index: usize) -> Self {
        self.end_index = end_index;
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Sample mean and divide-by-n standard deviation, two-pass with the
/// compensated mean correction.
pub(crate) fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mut mean = values.iter().sum::<f64>() / n;
    mean += values.iter().map(|v| v - mean).sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn is_constant(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

/// Standardizes a window: `x(t) = (R(t) - mean) / sd` with the divide-by-n
/// standard deviation, so that `Σ x² = n`.
pub fn standardize(window: &[f64]) -> Result<StandardizedWindow> {
    if window.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: window.len(),
        });
    }
    if is_constant(window) {
        return Err(Error::DegenerateWindow);
    }
    let (mean, sd) = mean_sd(window);
    if !(sd > 0.0) || !sd.is_finite() {
        return Err(Error::DegenerateWindow);
    }
    Ok(StandardizedWindow {
        values: window.iter().map(|v| (v - mean) / sd).collect(),
        end_index: window.len(),
    })
}

/// `C_xx(r) = 1/(n-r) Σ_{t=1}^{n-r} x(t) x(t+r)`.
pub fn sample_correlation(x: &[f64], r: usize) -> Result<f64> {
    let n = x.len();
    if r == 0 || r >= n {
        return Err(Error::LagOutOfRange { lag: r, len: n });
    }
    Ok(lagged_product_sum(x, r) / (n - r) as f64)
}

fn lagged_product_sum(x: &[f64], r: usize) -> f64 {
    x.iter().zip(&x[r..]).map(|(a, b)| a * b).sum()
}

/// `C_xxx(r, s) = 1/(n-s) Σ_{t=1}^{n-s} x(t) x(t+r) x(t+s)` for `0 < r < s < n`.
pub fn sample_bicorrelation(x: &[f64], r: usize, s: usize) -> Result<f64> {
    let n = x.len();
    if r == 0 || r >= n {
        return Err(Error::LagOutOfRange { lag: r, len: n });
    }
    if s >= n {
        return Err(Error::LagOutOfRange { lag: s, len: n });
    }
    if r >= s {
        return Err(Error::LagOrderViolation { r, s });
    }
    let m = n - s;
    let sum: f64 = (0..m).map(|t| x[t] * x[t + r] * x[t + s]).sum();
    Ok(sum / m as f64)
}

/// Correlation portmanteau statistic `H_xx = Σ_{r=1}^{L} (n-r) C_xx(r)²`,
/// χ²(L) under the white-noise null.
pub fn h_xx(x: &[f64], lags: usize) -> Result<f64> {
    let n = x.len();
    if lags == 0 || lags >= n {
        return Err(Error::LagOutOfRange { lag: lags, len: n });
    }
    (1..=lags).try_fold(0.0, |acc, r| {
        let c = sample_correlation(x, r)?;
        Ok(acc + (n - r) as f64 * c * c)
    })
}

/// Bicorrelation portmanteau statistic
/// `H_xxx = Σ_{s=2}^{L} Σ_{r=1}^{s-1} (n-s) C_xxx(r,s)²`,
/// χ²(L(L-1)/2) under the null.
pub fn h_xxx(x: &[f64], lags: usize) -> Result<f64> {
    let n = x.len();
    if lags < 2 || lags >= n {
        return Err(Error::LagOutOfRange { lag: lags, len: n });
    }
    let mut acc = 0.0;
    for s in 2..=lags {
        for r in 1..s {
            let c = sample_bicorrelation(x, r, s)?;
            acc += (n - s) as f64 * c * c;
        }
    }
    Ok(acc)
}

/// Degrees of freedom of the bicorrelation null for `L` lags.
pub fn bicorrelation_dof(lags: usize) -> u32 {
    (lags * (lags - 1) / 2) as u32
}
