//! Correlation-sign direction predictor and its hit-rate evaluation.
//!
//! Inside a window whose lag-1 correlation is significant, the next return
//! is predicted to move with the last standardized return when the
//! correlation is positive and against it when negative. Outside such
//! windows no prediction is made.

use crate::clusters::{clusters_from_rolling, ClusterTable};
use crate::ingest::ReturnSeries;
use crate::portmanteau::mean_sd;
use crate::rolling::{RollingResult, Which};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    /// 1-based index of the predicted return.
    pub target_index: usize,
    pub predicted: i8,
    pub actual_sign: i8,
    pub p_xx_at_t: f64,
    pub cluster_id: Option<usize>,
    /// Defined only when both the prediction and the realized sign are nonzero.
    pub hit: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HitRateSummary {
    pub predictions_made: usize,
    pub hits: usize,
    pub misses: usize,
    pub skipped_zero_actual: usize,
    pub hit_rate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterHitRate {
    pub cluster_id: usize,
    pub size: usize,
    pub decisions: usize,
    pub hits: usize,
    pub hit_rate: f64,
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// `sign(c · x_t)` when `p_xx < alpha`, otherwise 0.
pub fn predict_next(c_xx_lag1: f64, x_t: f64, p_xx: f64, alpha: f64) -> i8 {
    if p_xx < alpha {
        sign(c_xx_lag1 * x_t)
    } else {
        0
    }
}

/// One record per window whose end `t` has a successor `t + 1` in the
/// series. Records are attributed to the linear-significance cluster
/// containing their source window.
pub fn run_predictions(r: &ReturnSeries, res: &RollingResult, alpha: f64) -> Vec<PredictionRecord> {
    let table = clusters_from_rolling(res, Which::Linear, alpha);
    let n = res.cfg.n;
    let x = &r.returns;
    res.records
        .iter()
        .filter(|w| w.end_index < x.len())
        .map(|w| {
            let t = w.end_index;
            let predicted = if w.degenerate {
                0
            } else {
                let window = &x[t - n..t];
                let (mean, sd) = mean_sd(window);
                let x_t = (window[n - 1] - mean) / sd;
                predict_next(w.c_xx_lag1, x_t, w.p_xx, alpha)
            };
            let actual_sign = sign(x[t]);
            let hit = (predicted != 0 && actual_sign != 0).then_some(predicted == actual_sign);
            PredictionRecord {
                target_index: t + 1,
                predicted,
                actual_sign,
                p_xx_at_t: w.p_xx,
                cluster_id: table.cluster_of(t),
                hit,
            }
        })
        .collect()
}

pub fn hit_rate(records: &[PredictionRecord]) -> HitRateSummary {
    let mut s = HitRateSummary {
        predictions_made: 0,
        hits: 0,
        misses: 0,
        skipped_zero_actual: 0,
        hit_rate: None,
    };
    for rec in records.iter().filter(|r| r.predicted != 0) {
        s.predictions_made += 1;
        match rec.hit {
            Some(true) => s.hits += 1,
            Some(false) => s.misses += 1,
            None => s.skipped_zero_actual += 1,
        }
    }
    let decided = s.hits + s.misses;
    if decided > 0 {
        s.hit_rate = Some(s.hits as f64 / decided as f64);
    }
    s
}

/// Running hit rate after each decided prediction, as `(target_index, rate)`.
pub fn cumulative_hit_rate(records: &[PredictionRecord]) -> Vec<(usize, f64)> {
    let (mut hits, mut decided) = (0usize, 0usize);
    records
        .iter()
        .filter_map(|r| {
            let h = r.hit?;
            decided += 1;
            hits += h as usize;
            Some((r.target_index, hits as f64 / decided as f64))
        })
        .collect()
}

/// Hit rate inside each cluster that holds at least one decided prediction.
pub fn hit_rate_by_cluster(records: &[PredictionRecord], table: &ClusterTable) -> Vec<ClusterHitRate> {
    let mut tally = vec![(0usize, 0usize); table.clusters.len()];
    for r in records {
        if let (Some(id), Some(h)) = (r.cluster_id, r.hit) {
            if let Some(t) = tally.get_mut(id) {
                t.0 += 1;
                t.1 += h as usize;
            }
        }
    }
    tally
        .into_iter()
        .enumerate()
        .filter(|(_, (d, _))| *d > 0)
        .map(|(id, (decisions, hits))| ClusterHitRate {
            cluster_id: id,
            size: table.clusters[id].size,
            decisions,
            hits,
            hit_rate: hits as f64 / decisions as f64,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clusters::extract_clusters;
    use crate::portmanteau::WindowConfig;
    use crate::rolling::roll;
    use crate::synth::{ar_series, gaussian_series, GeneratorSpec};

    fn rec(predicted: i8, actual: i8, cluster: Option<usize>) -> PredictionRecord {
        PredictionRecord {
            target_index: 0,
            predicted,
            actual_sign: actual,
            p_xx_at_t: 0.0,
            cluster_id: cluster,
            hit: (predicted != 0 && actual != 0).then_some(predicted == actual),
        }
    }

    #[test]
    fn predictor_cases() {
        assert_eq!(predict_next(0.3, 1.2, 0.01, 0.05), 1);
        assert_eq!(predict_next(-0.3, 1.2, 0.01, 0.05), -1);
        assert_eq!(predict_next(0.3, 1.2, 0.20, 0.05), 0);
        assert_eq!(predict_next(0.3, 1.2, 0.05, 0.05), 0);
        assert_eq!(predict_next(0.0, 1.2, 0.01, 0.05), 0);
    }

    #[test]
    fn hit_rate_counts() {
        let recs = [rec(1, 1, None), rec(-1, 1, None), rec(1, 1, None), rec(1, 0, None), rec(0, 1, None)];
        let s = hit_rate(&recs);
        assert_eq!(s.predictions_made, 4);
        assert_eq!((s.hits, s.misses, s.skipped_zero_actual), (2, 1, 1));
        assert!((s.hit_rate.unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(hit_rate(&[rec(0, 1, None)]).hit_rate, None);
    }

    #[test]
    fn cumulative_trajectory() {
        let recs = [rec(1, 1, None), rec(0, 1, None), rec(1, 1, None), rec(1, -1, None)];
        let c: Vec<f64> = cumulative_hit_rate(&recs).into_iter().map(|p| p.1).collect();
        assert_eq!(c, vec![1.0, 1.0, 2.0 / 3.0]);
        assert!(cumulative_hit_rate(&[]).is_empty());
    }

    #[test]
    fn per_cluster_rate() {
        let table = extract_clusters(&[true, true, true], 0);
        let recs = [rec(1, 1, Some(0)), rec(1, 1, Some(0)), rec(1, -1, Some(0))];
        let out = hit_rate_by_cluster(&recs, &table);
        assert_eq!(out.len(), 1);
        assert_eq!((out[0].size, out[0].decisions), (3, 3));
        assert!((out[0].hit_rate - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn record_count_and_gate() {
        let r = gaussian_series(&GeneratorSpec::gaussian(2_000, 12)).unwrap();
        let res = roll(&r, &WindowConfig::new(64)).unwrap();
        let recs = run_predictions(&r, &res, 0.05);
        assert_eq!(recs.len(), res.records.len() - 1);
        for p in &recs {
            if p.predicted != 0 {
                assert!(p.p_xx_at_t < 0.05);
                assert!(p.cluster_id.is_some());
            }
        }
        // A gate that never opens.
        let none = run_predictions(&r, &res, 1e-300);
        assert!(none.iter().all(|p| p.predicted == 0));
    }

    #[test]
    fn predictions_concentrate_in_significant_windows() {
        let r = ar_series(&GeneratorSpec::ar(vec![0.3], 5_000, 8)).unwrap();
        let res = roll(&r, &WindowConfig::new(64)).unwrap();
        let recs = run_predictions(&r, &res, 0.05);
        let made = recs.iter().filter(|p| p.predicted != 0).count();
        let significant = recs.iter().filter(|p| p.p_xx_at_t < 0.05).count();
        assert!(made > 0);
        assert!(made <= significant);
    }

    #[test]
    fn negation_flips_predictions_and_keeps_hits() {
        let r = ar_series(&GeneratorSpec::ar(vec![0.3], 3_000, 21)).unwrap();
        let neg = ReturnSeries::new(r.returns.iter().map(|v| -v).collect(), "");
        let cfg = WindowConfig::new(32);
        let a = run_predictions(&r, &roll(&r, &cfg).unwrap(), 0.05);
        let b = run_predictions(&neg, &roll(&neg, &cfg).unwrap(), 0.05);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.predicted, -y.predicted);
            assert_eq!(x.hit, y.hit);
            assert_eq!(x.p_xx_at_t, y.p_xx_at_t);
        }
    }

    #[test]
    fn future_values_do_not_leak() {
        let r = ar_series(&GeneratorSpec::ar(vec![0.3], 1_500, 4)).unwrap();
        let cfg = WindowConfig::new(32);
        let base = run_predictions(&r, &roll(&r, &cfg).unwrap(), 0.05);
        let cut = 1_000;
        let mut perturbed = r.clone();
        for v in &mut perturbed.returns[cut..] {
            *v = -3.0 * *v + 0.5;
        }
        let other = run_predictions(&perturbed, &roll(&perturbed, &cfg).unwrap(), 0.05);
        for (a, b) in base.iter().zip(&other) {
            if a.target_index <= cut {
                assert_eq!(a.predicted, b.predicted);
                assert_eq!(a.p_xx_at_t.to_bits(), b.p_xx_at_t.to_bits());
            }
        }
    }
}
