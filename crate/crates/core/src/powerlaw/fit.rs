use super::zeta::{hurwitz_zeta, zeta};
use super::{FitOptions, PowerLawFit, ALPHA_MAX, ALPHA_MIN};
use crate::error::{Error, Result};

const GOLDEN_TOL: f64 = 1e-6;
const INV_PHI: f64 = 0.618_033_988_749_894_8;
/// Gaps up to this length are walked term by term when tracking `ζ(α, v)`.
const WALK_LIMIT: u64 = 32;

/// Discrete power-law log-likelihood `-n ln ζ(α, x_min) - α Σ ln x_i`.
pub fn log_likelihood(alpha: f64, x_min: u64, count: usize, sum_ln: f64) -> f64 {
    -(count as f64) * zeta(alpha, x_min as f64).ln() - alpha * sum_ln
}

/// Continuous-approximation estimate used to seed the search.
pub fn alpha_initial_guess(x_min: u64, count: usize, sum_ln: f64) -> f64 {
    let shift = (x_min as f64 - 0.5).ln();
    let denom = sum_ln - count as f64 * shift;
    if denom > 0.0 {
        1.0 + count as f64 / denom
    } else {
        ALPHA_MAX
    }
}

/// Maximum-likelihood exponent for samples at or above `x_min`.
pub fn fit_alpha_discrete(samples: &[u64], x_min: u64) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "{} samples, need at least 2",
            samples.len()
        )));
    }
    if x_min == 0 {
        return Err(Error::InvalidConfig("x_min must be at least 1".into()));
    }
    if let Some(v) = samples.iter().find(|&&v| v < x_min) {
        return Err(Error::InvalidConfig(format!("sample {v} below x_min {x_min}")));
    }
    if samples.iter().all(|&v| v == samples[0]) {
        return Err(Error::DegenerateSample);
    }
    let sum_ln: f64 = samples.iter().map(|&v| (v as f64).ln()).sum();
    maximize(x_min, samples.len(), sum_ln)
}

fn maximize(x_min: u64, count: usize, sum_ln: f64) -> Result<f64> {
    let f = |a: f64| log_likelihood(a, x_min, count, sum_ln);
    let guess = alpha_initial_guess(x_min, count, sum_ln).clamp(ALPHA_MIN, ALPHA_MAX);

    // The likelihood is concave in α, so a slope probe at the bracket ends
    // tells whether the maximum lies inside it.
    let probe = 1e-4;
    let mut lo = (guess - 0.25).max(ALPHA_MIN);
    let mut hi = (guess + 0.25).min(ALPHA_MAX);
    if lo > ALPHA_MIN && f(lo + probe) < f(lo) {
        lo = ALPHA_MIN;
    }
    if hi < ALPHA_MAX && f(hi - probe) < f(hi) {
        hi = ALPHA_MAX;
    }

    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > GOLDEN_TOL {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let alpha = 0.5 * (lo + hi);
    if alpha - ALPHA_MIN < 10.0 * GOLDEN_TOL || ALPHA_MAX - alpha < 10.0 * GOLDEN_TOL {
        return Err(Error::NoInteriorMaximum(alpha));
    }
    Ok(alpha)
}

/// Kolmogorov-Smirnov distance between the empirical CDF of the samples at
/// or above `x_min` and the fitted discrete power law.
pub fn ks_distance(samples: &[u64], x_min: u64, alpha: f64) -> Result<f64> {
    let mut tail: Vec<u64> = samples.iter().copied().filter(|&v| v >= x_min).collect();
    if tail.is_empty() {
        return Err(Error::EmptyTail(x_min));
    }
    let z0 = hurwitz_zeta(alpha, x_min)?;
    tail.sort_unstable();
    Ok(ks_sorted(&tail, x_min, alpha, z0))
}

/// KS distance on a sorted, non-empty tail. Between observed values the
/// empirical CDF is flat while the model CDF rises, so the supremum is
/// attained at an observed value or just below one.
pub(crate) fn ks_sorted(tail: &[u64], x_min: u64, alpha: f64, z0: f64) -> f64 {
    let n = tail.len() as f64;
    // ζ(α, cursor) tracked as we walk up the support.
    let mut cursor = x_min;
    let mut z = z0;
    let mut below = 0usize;
    let mut worst: f64 = 0.0;
    let mut i = 0;
    while i < tail.len() {
        let v = tail[i];
        let mut j = i;
        while j < tail.len() && tail[j] == v {
            j += 1;
        }
        // Advance ζ(α, cursor) to ζ(α, v).
        if v - cursor <= WALK_LIMIT {
            while cursor < v {
                z -= (cursor as f64).powf(-alpha);
                cursor += 1;
            }
        } else {
            z = zeta(alpha, v as f64);
        }
        // Model CDF at v - 1 against the empirical CDF just below v.
        if v > x_min {
            let model = 1.0 - z / z0;
            worst = worst.max((below as f64 / n - model).abs());
        }
        z -= (v as f64).powf(-alpha);
        cursor = v + 1;
        let model = 1.0 - z / z0;
        worst = worst.max((j as f64 / n - model).abs());
        below = j;
        i = j;
    }
    worst.min(1.0)
}

/// Scans candidate lower bounds, fitting α at each and keeping the one with
/// the smallest KS distance.
pub fn fit_powerlaw(samples: &[u64], options: &FitOptions) -> Result<PowerLawFit> {
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    fit_sorted(&sorted, options)
}

pub(crate) fn fit_sorted(sorted: &[u64], options: &FitOptions) -> Result<PowerLawFit> {
    let n = sorted.len();
    if n < 10 {
        return Err(Error::InsufficientData(format!("{n} samples, need at least 10")));
    }
    if sorted[0] == 0 {
        return Err(Error::InvalidConfig("sizes must be at least 1".into()));
    }
    if sorted[0] == sorted[n - 1] {
        return Err(Error::InsufficientData("only one distinct value".into()));
    }
    let min_tail = options.min_tail.max(2);

    // suffix_ln[i] = Σ_{k>=i} ln sorted[k]
    let mut suffix_ln = vec![0.0; n + 1];
    for i in (0..n).rev() {
        suffix_ln[i] = suffix_ln[i + 1] + (sorted[i] as f64).ln();
    }

    let mut best: Option<PowerLawFit> = None;
    let mut i = 0;
    while i < n {
        let x_min = sorted[i];
        let n_tail = n - i;
        if n_tail < min_tail {
            break;
        }
        let tail = &sorted[i..];
        if tail[0] != tail[n_tail - 1] {
            if let Ok(alpha) = maximize(x_min, n_tail, suffix_ln[i]) {
                let ks = ks_sorted(tail, x_min, alpha, zeta(alpha, x_min as f64));
                if best.as_ref().is_none_or(|b| ks < b.ks) {
                    best = Some(PowerLawFit {
                        x_min,
                        alpha,
                        ks,
                        n_tail,
                        n_total: n,
                        bootstrap_p: None,
                        reps: 0,
                        seed: None,
                    });
                }
            }
        }
        while i < n && sorted[i] == x_min {
            i += 1;
        }
    }
    best.ok_or_else(|| {
        Error::InsufficientData(format!(
            "no lower bound with at least {min_tail} tail samples admits a fit"
        ))
    })
}
