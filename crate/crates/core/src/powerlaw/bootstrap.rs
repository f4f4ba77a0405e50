use super::fit::fit_sorted;
use super::sample::DiscretePowerLaw;
use super::{FitOptions, PowerLawFit};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::synth::{substream, BOOTSTRAP_STREAM_BASE};
use rand::Rng;

/// Semi-parametric bootstrap goodness-of-fit p-value.
///
/// Each repetition rebuilds a dataset of the original size: with probability
/// `n_tail / n` a draw from the fitted power law, otherwise a uniform pick
/// from the observed samples below `x_min`. Both `x_min` and `alpha` are
/// refitted, and the p-value is the fraction of repetitions whose KS
/// distance is at least the observed one. Repetitions whose refit fails are
/// left out of the denominator.
///
/// Repetition `r` draws from sub-stream `BOOTSTRAP_STREAM_BASE + r` of
/// `seed`, so the result does not depend on `exec`.
pub fn bootstrap_pvalue(
    samples: &[u64],
    fit: &PowerLawFit,
    reps: usize,
    seed: u64,
    options: &FitOptions,
    exec: Exec,
) -> Result<f64> {
    if reps < 100 {
        return Err(Error::InvalidConfig(format!(
            "{reps} bootstrap repetitions, need at least 100"
        )));
    }
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = samples.len();
    let law = DiscretePowerLaw::new(fit.alpha, fit.x_min)?;
    let body: Vec<u64> = samples.iter().copied().filter(|&v| v < fit.x_min).collect();
    let n_tail = n - body.len();
    let p_tail = n_tail as f64 / n as f64;

    let outcomes = exec.map(reps, |r| {
        let mut rng = substream(seed, BOOTSTRAP_STREAM_BASE + r as u64);
        let mut synthetic: Vec<u64> = (0..n)
            .map(|_| {
                if body.is_empty() || rng.random::<f64>() < p_tail {
                    law.sample(&mut rng)
                } else {
                    body[rng.random_range(0..body.len())]
                }
            })
            .collect();
        synthetic.sort_unstable();
        fit_sorted(&synthetic, options).ok().map(|f| f.ks >= fit.ks)
    });

    let decided: Vec<bool> = outcomes.into_iter().flatten().collect();
    if decided.is_empty() {
        return Err(Error::InsufficientData(
            "no bootstrap repetition admitted a fit".into(),
        ));
    }
    Ok(decided.iter().filter(|&&b| b).count() as f64 / decided.len() as f64)
}

/// Fit followed by the bootstrap, with the p-value recorded on the fit.
pub fn fit_with_bootstrap(
    samples: &[u64],
    options: &FitOptions,
    reps: usize,
    seed: u64,
    exec: Exec,
) -> Result<PowerLawFit> {
    let mut fit = super::fit_powerlaw(samples, options)?;
    fit.bootstrap_p = Some(bootstrap_pvalue(samples, &fit, reps, seed, options, exec)?);
    fit.reps = reps;
    fit.seed = Some(seed);
    Ok(fit)
}
