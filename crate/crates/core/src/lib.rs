//! Detection of episodic serial dependence in return series.
//!
//! A window of `n` returns is rolled one step at a time across the series.
//! In each position the window is tested for linear dependence with the
//! correlation portmanteau statistic `H_xx` and, after AR prewhitening, for
//! non-linear dependence with the bicorrelation statistic `H_xxx`. Runs of
//! consecutive significant windows form clusters whose size distribution can
//! be fitted with a discrete power law, and a sign predictor driven by the
//! lag-1 correlation is scored inside the significant episodes.

pub mod clusters;
pub mod error;
pub mod ingest;
pub mod par;
pub mod portmanteau;
pub mod powerlaw;
pub mod predictor;
pub mod rolling;
pub mod synth;

pub use error::{Error, ErrorClass, Result};
pub use par::Exec;
