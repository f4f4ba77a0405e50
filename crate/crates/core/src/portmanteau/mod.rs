//! Windowed correlation and bicorrelation portmanteau tests.
//!
//! A window is standardized, tested for linear dependence with `H_xx`,
//! prewhitened with a BIC-selected AR fit, and the residuals are tested
//! for non-linear dependence with `H_xxx`.

mod ar;
mod chisq;
mod kernels;

pub use ar::{
    ar_residuals, autocovariances, bic, fit_ar_ladder, is_stationary, prewhiten,
    select_ar_order_bic, ArModel,
};
pub use chisq::chi_square_sf;
pub use kernels::{
    bicorrelation_dof, h_xx, h_xxx, sample_bicorrelation, sample_correlation, standardize,
    StandardizedWindow,
};

pub(crate) use kernels::mean_sd;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Parameters of a single window test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowConfig {
    /// Window length.
    pub n: usize,
    /// Number of lags `L`.
    pub lags: usize,
    /// Significance level.
    pub alpha: f64,
    /// Largest AR order scanned during prewhitening.
    pub ar_max_order: usize,
}

impl WindowConfig {
    /// Defaults: `L = 2`, `alpha = 0.05`, AR orders up to `min(n/4, 24)`.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            lags: 2,
            alpha: 0.05,
            ar_max_order: Self::default_ar_max_order(n, 2),
        }
    }

    pub fn default_ar_max_order(n: usize, lags: usize) -> usize {
        (n / 4).min(24).min(n.saturating_sub(lags + 1)).max(1)
    }

    pub fn with_lags(mut self, lags: usize) -> Self {
        self.lags = lags;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_ar_max_order(mut self, p: usize) -> Self {
        self.ar_max_order = p;
        self
    }

    /// `b` such that `L = n^b` (informational).
    pub fn b_equivalent(&self) -> f64 {
        (self.lags as f64).ln() / (self.n as f64).ln()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n < 4 {
            return bad(format!("window length {} below 4", self.n));
        }
        if self.lags == 0 || self.lags >= self.n {
            return bad(format!("lags {} must lie in 1..{}", self.lags, self.n));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha {} outside (0, 1)", self.alpha));
        }
        // Prewhitened residuals (n - p of them) must still exceed the lag count.
        if self.ar_max_order == 0 || self.ar_max_order + self.lags >= self.n {
            return bad(format!(
                "ar_max_order {} must lie in 1..{}",
                self.ar_max_order,
                self.n - self.lags
            ));
        }
        Ok(())
    }
}

/// Outcome of testing one window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowResult {
    /// 1-based index of the window's last observation.
    pub end_index: usize,
    /// Lag-1 correlation of the standardized, un-prewhitened window.
    pub c_xx_lag1: f64,
    pub h_xx: f64,
    pub p_xx: f64,
    pub ar_order: usize,
    pub h_xxx: f64,
    pub p_xxx: f64,
    pub degenerate: bool,
}

impl WindowResult {
    pub fn degenerate(end_index: usize) -> Self {
        Self {
            end_index,
            c_xx_lag1: 0.0,
            h_xx: 0.0,
            p_xx: 1.0,
            ar_order: 0,
            h_xxx: 0.0,
            p_xxx: 1.0,
            degenerate: true,
        }
    }
}

/// Runs the full window test on a raw return slice of length `cfg.n`.
/// `end_index` is recorded verbatim in the result.
pub fn window_test(window: &[f64], cfg: &WindowConfig, end_index: usize) -> Result<WindowResult> {
    if window.len() != cfg.n {
        return Err(Error::InvalidConfig(format!(
            "window of length {} does not match n = {}",
            window.len(),
            cfg.n
        )));
    }
    let x = match standardize(window) {
        Ok(w) => w.values,
        Err(Error::DegenerateWindow) => return Ok(WindowResult::degenerate(end_index)),
        Err(e) => return Err(e),
    };

    let c_xx_lag1 = sample_correlation(&x, 1)?;
    let hxx = h_xx(&x, cfg.lags)?;
    let p_xx = chi_square_sf(hxx, cfg.lags as u32)?;

    let ladder = fit_ar_ladder(&x, cfg.ar_max_order)?;
    let ar_order = select_ar_order_bic(&ladder, cfg.n).unwrap_or(0);
    let (h_xxx, p_xxx) = if cfg.lags < 2 || ar_order == 0 {
        (0.0, 1.0)
    } else {
        match prewhiten(&x, &ladder[ar_order - 1]) {
            // Effective length n' = n - p enters through the residual count.
            Ok(e) => {
                let h = h_xxx(&e, cfg.lags)?;
                (h, chi_square_sf(h, bicorrelation_dof(cfg.lags))?)
            }
            Err(Error::DegenerateWindow) => (0.0, 1.0),
            Err(e) => return Err(e),
        }
    };

    Ok(WindowResult {
        end_index,
        c_xx_lag1,
        h_xx: hxx,
        p_xx,
        ar_order,
        h_xxx,
        p_xxx,
        degenerate: false,
    })
}
