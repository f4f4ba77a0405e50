//! Yule-Walker autoregressive fits by Levinson-Durbin recursion, Schwarz
//! (BIC) order selection and prewhitening.

use super::kernels::standardize;
use crate::error::{Error, Result};

/// Tolerance on `|k_p| <= 1` before a reflection coefficient counts as a breakdown.
const REFLECTION_TOL: f64 = 1e-12;

/// One rung of the Levinson-Durbin ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct ArModel {
    pub order: usize,
    /// `a_1..a_p` in `x(t) = Σ a_i x(t-i) + e(t)`.
    pub coefficients: Vec<f64>,
    /// Reflection (partial autocorrelation) coefficient produced at this order.
    pub reflection: f64,
    pub residual_variance: f64,
    pub bic: f64,
}

impl ArModel {
    /// The trivial order-0 model (no filtering).
    pub fn white_noise(variance: f64) -> Self {
        Self {
            order: 0,
            coefficients: Vec::new(),
            reflection: 0.0,
            residual_variance: variance,
            bic: f64::NAN,
        }
    }
}

/// Schwarz criterion `n ln σ² + p ln n`.
pub fn bic(residual_variance: f64, order: usize, n: usize) -> f64 {
    let n = n as f64;
    n * residual_variance.ln() + order as f64 * n.ln()
}

/// Biased (divide-by-n) sample autocovariances at lags `0..=max_lag`.
pub fn autocovariances(x: &[f64], max_lag: usize) -> Vec<f64> {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let centered: Vec<f64> = x.iter().map(|v| v - mean).collect();
    (0..=max_lag)
        .map(|k| {
            centered
                .iter()
                .zip(&centered[k..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / n
        })
        .collect()
}

/// Fits AR(1)..AR(p_max) in one Levinson-Durbin pass over the sample
/// autocovariances of `x`.
pub fn fit_ar_ladder(x: &[f64], p_max: usize) -> Result<Vec<ArModel>> {
    let n = x.len();
    if p_max == 0 || n < 2 || p_max > n - 2 {
        return Err(Error::InvalidConfig(format!(
            "AR order range 1..={p_max} invalid for {n} observations"
        )));
    }
    let gamma = autocovariances(x, p_max);
    if !(gamma[0] > 0.0) {
        return Err(Error::DegenerateWindow);
    }

    let mut ladder = Vec::with_capacity(p_max);
    let mut phi: Vec<f64> = Vec::with_capacity(p_max);
    let mut sigma = gamma[0];
    for p in 1..=p_max {
        let k = if sigma > 0.0 {
            let acc: f64 = phi
                .iter()
                .enumerate()
                .map(|(j, a)| a * gamma[p - 1 - j])
                .sum();
            (gamma[p] - acc) / sigma
        } else {
            // Exact fit already reached; higher orders add nothing.
            0.0
        };
        if !k.is_finite() || k.abs() > 1.0 + REFLECTION_TOL {
            return Err(Error::NumericalBreakdown(format!(
                "reflection coefficient {k} at order {p}"
            )));
        }
        let prev = phi.clone();
        for j in 0..phi.len() {
            phi[j] = prev[j] - k * prev[prev.len() - 1 - j];
        }
        phi.push(k);
        sigma = (sigma * (1.0 - k * k)).max(0.0);
        ladder.push(ArModel {
            order: p,
            coefficients: phi.clone(),
            reflection: k,
            residual_variance: sigma,
            bic: bic(sigma, p, n),
        });
    }
    Ok(ladder)
}

/// Order minimizing `n ln σ²_p + p ln n`; ties go to the smaller order.
pub fn select_ar_order_bic(ladder: &[ArModel], n: usize) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for m in ladder {
        let score = bic(m.residual_variance, m.order, n);
        match best {
            Some((_, b)) if !(score < b) => {}
            _ => best = Some((m.order, score)),
        }
    }
    best.map(|(p, _)| p)
}

/// Raw filter output `e(t) = x(t) - Σ a_i x(t-i)` for `t = p+1..n`.
pub fn ar_residuals(x: &[f64], coefficients: &[f64]) -> Result<Vec<f64>> {
    let p = coefficients.len();
    if p >= x.len() {
        return Err(Error::InvalidConfig(format!(
            "AR order {p} not below window length {}",
            x.len()
        )));
    }
    Ok((p..x.len())
        .map(|t| {
            let fitted: f64 = coefficients
                .iter()
                .enumerate()
                .map(|(i, a)| a * x[t - 1 - i])
                .sum();
            x[t] - fitted
        })
        .collect())
}

/// Filters out the linear component and re-standardizes the residuals.
/// Output length is `n - p`.
pub fn prewhiten(x: &[f64], model: &ArModel) -> Result<Vec<f64>> {
    let e = ar_residuals(x, &model.coefficients)?;
    Ok(standardize(&e)?.values)
}

/// Whether `x(t) = Σ a_i x(t-i) + e(t)` is stationary, i.e. every root of
/// `1 - a_1 z - ... - a_p z^p` lies outside the unit circle. Uses the
/// step-down recursion: stationary iff every reflection coefficient has
/// magnitude below one.
pub fn is_stationary(coefficients: &[f64]) -> bool {
    let mut a = coefficients.to_vec();
    while let Some(&k) = a.last() {
        if !k.is_finite() || k.abs() >= 1.0 {
            return false;
        }
        let p = a.len();
        let denom = 1.0 - k * k;
        let prev: Vec<f64> = (0..p - 1)
            .map(|j| (a[j] + k * a[p - 2 - j]) / denom)
            .collect();
        a = prev;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portmanteau::kernels::sample_correlation;
    use crate::synth::{ar_series, gaussian_series, GeneratorSpec};

    fn noise(len: usize, seed: u64) -> Vec<f64> {
        let raw = gaussian_series(&GeneratorSpec::gaussian(len, seed)).unwrap();
        standardize(&raw.returns).unwrap().values
    }

    #[test]
    fn first_step_is_lag_one_autocorrelation() {
        let x = noise(200, 3);
        let ladder = fit_ar_ladder(&x, 4).unwrap();
        let rho1 = autocovariances(&x, 1)[1] / autocovariances(&x, 1)[0];
        assert!((ladder[0].coefficients[0] - rho1).abs() < 1e-14);
        // Biased autocovariance vs the 1/(n-r) correlation differ by n/(n-1).
        let c1 = sample_correlation(&x, 1).unwrap();
        assert!((ladder[0].coefficients[0] - c1 * 199.0 / 200.0).abs() < 1e-12);
    }

    #[test]
    fn variance_recursion_and_monotonicity() {
        let x = noise(128, 11);
        let ladder = fit_ar_ladder(&x, 20).unwrap();
        let mut prev = autocovariances(&x, 0)[0];
        for m in &ladder {
            assert!(m.reflection.abs() <= 1.0 + 1e-12);
            let expected = prev * (1.0 - m.reflection * m.reflection);
            assert!((m.residual_variance - expected).abs() < 1e-10);
            assert!(m.residual_variance <= prev);
            prev = m.residual_variance;
        }
    }

    #[test]
    fn recovers_ar1_coefficient() {
        let spec = GeneratorSpec::ar(vec![0.5], 5_000, 17).with_innovation_sd(0.01);
        let r = ar_series(&spec).unwrap();
        let x = standardize(&r.returns).unwrap().values;
        let ladder = fit_ar_ladder(&x, 3).unwrap();
        assert!((ladder[0].coefficients[0] - 0.5).abs() < 0.05);
    }

    #[test]
    fn bic_penalty_dominates_flat_ladder() {
        let ladder: Vec<ArModel> = (1..=5)
            .map(|p| ArModel {
                order: p,
                coefficients: vec![0.0; p],
                reflection: 0.0,
                residual_variance: 1.0 - 1e-6 * p as f64,
                bic: 0.0,
            })
            .collect();
        assert_eq!(select_ar_order_bic(&ladder, 256), Some(1));
    }

    #[test]
    fn bic_ties_prefer_smaller_order() {
        // With n = 1 the penalty vanishes, so equal variances tie exactly.
        let mk = |order| ArModel {
            order,
            coefficients: vec![0.0; order],
            reflection: 0.0,
            residual_variance: 0.7,
            bic: 0.0,
        };
        assert_eq!(select_ar_order_bic(&[mk(1), mk(2), mk(3)], 1), Some(1));
        assert_eq!(select_ar_order_bic(&[mk(2), mk(3)], 1), Some(2));
        assert_eq!(select_ar_order_bic(&[], 1), None);
    }

    #[test]
    fn identity_filter_restandardizes() {
        let x = noise(50, 5);
        let model = ArModel {
            order: 1,
            coefficients: vec![0.0],
            reflection: 0.0,
            residual_variance: 1.0,
            bic: 0.0,
        };
        let out = prewhiten(&x, &model).unwrap();
        assert_eq!(out.len(), 49);
        assert_eq!(out, standardize(&x[1..]).unwrap().values);
    }

    #[test]
    fn residuals_recover_injected_innovations() {
        let coeffs = [0.6, -0.2, 0.1];
        let innov = noise(300, 23);
        let mut x = vec![0.0; innov.len()];
        for t in 0..x.len() {
            let mut v = innov[t];
            for (i, a) in coeffs.iter().enumerate() {
                if t > i {
                    v += a * x[t - 1 - i];
                }
            }
            x[t] = v;
        }
        let e = ar_residuals(&x, &coeffs).unwrap();
        assert_eq!(e.len(), x.len() - coeffs.len());
        for (got, want) in e.iter().zip(&innov[coeffs.len()..]) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn constant_input_is_degenerate() {
        assert_eq!(fit_ar_ladder(&[0.0; 10], 2), Err(Error::DegenerateWindow));
    }

    #[test]
    fn stationarity_boundary() {
        assert!(!is_stationary(&[1.0]));
        assert!(is_stationary(&[0.99]));
        assert!(is_stationary(&[]));
        assert!(is_stationary(&[0.5, 0.3]));
        assert!(!is_stationary(&[0.5, 0.6]));
        assert!(!is_stationary(&[-1.2]));
    }
}
