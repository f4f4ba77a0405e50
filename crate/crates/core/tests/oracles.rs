use rand::Rng;
use rand_distr::{Distribution, Geometric};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use transcorr::clusters::{clusters_from_rolling, size_distribution};
use transcorr::portmanteau::{chi_square_sf, fit_ar_ladder, select_ar_order_bic, WindowConfig};
use transcorr::powerlaw::{bootstrap_pvalue, fit_powerlaw, sample_powerlaw, FitOptions};
use transcorr::rolling::{roll_with, Which};
use transcorr::synth::{generate, substream, GeneratorSpec};
use transcorr::Exec;

#[test]
fn chi_square_tail_agrees_with_reference_library() {
    for dof in [1u32, 2, 3, 5, 10, 28, 120] {
        let reference = ChiSquared::new(dof as f64).unwrap();
        for i in 1..200 {
            let x = i as f64 * 0.05 * dof as f64;
            let ours = chi_square_sf(x, dof).unwrap();
            let theirs = reference.sf(x);
            let tol = 1e-10 * theirs + 1e-14;
            assert!((ours - theirs).abs() <= tol, "dof {dof} x {x}: {ours} vs {theirs}");
        }
    }
}

#[test]
fn bic_picks_true_order_for_ar3_most_of_the_time() {
    let coeffs = vec![0.5, -0.3, 0.2];
    let trials = 200;
    let mut hits = 0;
    for seed in 0..trials {
        let series = generate(&GeneratorSpec::ar(coeffs.clone(), 1000, seed)).unwrap();
        let ladder = fit_ar_ladder(&series.returns, 10).unwrap();
        if select_ar_order_bic(&ladder, series.returns.len()) == Some(3) {
            hits += 1;
        }
    }
    assert!(hits * 10 >= trials * 8, "order 3 chosen in {hits}/{trials}");
}

#[test]
fn fitter_recovers_exponent_and_threshold() {
    let mut rng = substream(31, 0);
    for &(alpha, x_min) in &[(1.8, 1u64), (2.5, 3), (3.2, 2)] {
        let samples = sample_powerlaw(alpha, x_min, 5000, &mut rng).unwrap();
        let fit = fit_powerlaw(&samples, &FitOptions::default()).unwrap();
        assert!((fit.alpha - alpha).abs() < 0.1, "alpha {alpha}: {}", fit.alpha);
        assert!(fit.x_min <= x_min + 3, "x_min {x_min}: {}", fit.x_min);
    }
}

#[test]
fn bootstrap_rejects_geometric_sizes() {
    let mut rng = substream(77, 0);
    let geo = Geometric::new(0.08).unwrap();
    let samples: Vec<u64> = (0..2000).map(|_| geo.sample(&mut rng) + 1).collect();
    let opts = FitOptions::default();
    let fit = fit_powerlaw(&samples, &opts).unwrap();
    let p = bootstrap_pvalue(&samples, &fit, 200, 5, &opts, Exec::default()).unwrap();
    assert!(p < 0.1, "p = {p}");
}

#[test]
fn white_noise_clusters_are_short() {
    let cfg = WindowConfig::new(64);
    let noise = generate(&GeneratorSpec::gaussian(40_000, 12)).unwrap();
    let res = roll_with(&noise, &cfg, 1, Exec::default()).unwrap();
    let table = clusters_from_rolling(&res, Which::Linear, cfg.alpha);
    let dist = size_distribution(&table).unwrap();
    // beyond a few window lengths the tail should be empty
    let tail = dist.ccdf.iter().find(|(s, _)| *s > 4 * cfg.n as u64).map_or(0.0, |c| c.1);
    assert!(tail < 0.01, "ccdf beyond 4n = {tail}");

    let regimes = generate(&GeneratorSpec::ar(vec![0.4], 40_000, 12)).unwrap();
    let res = roll_with(&regimes, &cfg, 1, Exec::default()).unwrap();
    let ar_table = clusters_from_rolling(&res, Which::Linear, cfg.alpha);
    let ar_max = ar_table.sizes().into_iter().max().unwrap();
    let noise_max = table.sizes().into_iter().max().unwrap();
    assert!(ar_max > 5 * noise_max, "{ar_max} vs {noise_max}");
}

#[test]
fn sequential_and_parallel_agree() {
    let mut rng = substream(3, 1);
    let len = 600 + rng.random_range(0..200);
    let series = generate(&GeneratorSpec::gaussian(len, 8)).unwrap();
    let cfg = WindowConfig::new(50);
    let a = roll_with(&series, &cfg, 1, Exec::Sequential).unwrap();
    let b = roll_with(&series, &cfg, 1, Exec::Parallel).unwrap();
    assert_eq!(a.records, b.records);
}
