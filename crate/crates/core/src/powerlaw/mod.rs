//! Discrete power-law fitting of cluster sizes: maximum-likelihood exponent,
//! KS-based lower-bound selection and a semi-parametric bootstrap
//! goodness-of-fit test.

mod bootstrap;
mod fit;
mod sample;
mod zeta;

pub use bootstrap::{bootstrap_pvalue, fit_with_bootstrap};
pub use fit::{alpha_initial_guess, fit_alpha_discrete, fit_powerlaw, ks_distance, log_likelihood};
pub use sample::{sample_powerlaw, DiscretePowerLaw};
pub use zeta::hurwitz_zeta;

use serde::{Deserialize, Serialize};

/// Exponent search interval (lower end exclusive in spirit; a maximum this
/// close to either end is reported as `NoInteriorMaximum`).
pub const ALPHA_MIN: f64 = 1.01;
pub const ALPHA_MAX: f64 = 6.0;

/// Default bootstrap repetitions.
pub const DEFAULT_REPS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Smallest tail (samples >= x_min) a candidate lower bound may leave.
    pub min_tail: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { min_tail: 10 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub x_min: u64,
    pub alpha: f64,
    pub ks: f64,
    pub n_tail: usize,
    pub n_total: usize,
    pub bootstrap_p: Option<f64>,
    pub reps: usize,
    pub seed: Option<u64>,
}

impl PowerLawFit {
    /// Plausibility rule: the power law is not rejected when `p > 0.1`.
    pub fn is_plausible(&self) -> Option<bool> {
        self.bootstrap_p.map(|p| p > 0.1)
    }
}
