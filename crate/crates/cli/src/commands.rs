use std::fs::File;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::json;
use transcorr::clusters::{clusters_from_rolling, size_distribution, ClusterTable};
use transcorr::ingest::{log_returns, parse_price_csv, summary_stats, PriceSeries, ReturnSeries};
use transcorr::portmanteau::{WindowConfig, WindowResult};
use transcorr::powerlaw::{bootstrap_pvalue, fit_powerlaw, FitOptions};
use transcorr::predictor::{cumulative_hit_rate, hit_rate, hit_rate_by_cluster, run_predictions};
use transcorr::rolling::{percent_significant, roll_with, significance_flags, RollingResult, Which};
use transcorr::synth::{generate, GeneratorSpec};
use transcorr::Exec;

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;
use crate::output::{read_text, Sink, Table};

pub fn run(cli: Cli, exec: Exec) -> CliResult<()> {
    if let Cmd::Rerun(args) = &cli.command {
        let text = read_text(&args.manifest)?;
        let manifest: RunManifest = serde_json::from_str(&text).map_err(|e| CliError::BadFile {
            path: args.manifest.clone(),
            detail: e.to_string(),
        })?;
        let mut replay = manifest.invocation;
        if let Cmd::Rerun(_) = replay.command {
            return Err(CliError::Usage("manifest records another rerun".into()));
        }
        if cli.global.output_dir.is_some() {
            replay.global.output_dir = cli.global.output_dir.clone();
        }
        return run(replay, exec);
    }

    let dir = cli.global.output_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let mut sink = Sink::new(dir, cli.global.format)?;
    let (input, parameters) = match &cli.command {
        Cmd::Summary(a) => summary(a, &mut sink)?,
        Cmd::Roll(a) => roll(a, &mut sink, exec)?,
        Cmd::Clusters(a) => clusters(a, &mut sink)?,
        Cmd::Plfit(a) => plfit(a, cli.global.seed, &mut sink, exec)?,
        Cmd::Predict(a) => predict(a, &mut sink, exec)?,
        Cmd::Simulate(a) => simulate(a, cli.global.seed, &mut sink)?,
        Cmd::Rerun(_) => unreachable!(),
    };
    let outputs = sink.written.clone();
    let manifest = RunManifest::new(&cli, input, parameters, outputs);
    sink.write_json(&RunManifest::file_name(cli.command.name()), &manifest)?;
    Ok(())
}

fn display(path: &Path) -> Option<String> {
    Some(path.display().to_string())
}

fn load_returns(input: &PriceInput) -> CliResult<ReturnSeries> {
    let opts = input.options().map_err(CliError::Usage)?;
    let file = File::open(&input.input).map_err(CliError::io(&input.input))?;
    let prices = parse_price_csv(file, &opts)?;
    Ok(log_returns(&prices))
}

fn window_config(n: usize, p: &TestParams) -> CliResult<WindowConfig> {
    let cfg = WindowConfig::new(n)
        .with_lags(p.lags)
        .with_alpha(p.alpha)
        .with_ar_max_order(
            p.ar_max_order
                .unwrap_or_else(|| WindowConfig::default_ar_max_order(n, p.lags)),
        );
    cfg.validate()?;
    Ok(cfg)
}

type Outcome = (Option<String>, serde_json::Value);

fn summary(a: &SummaryArgs, sink: &mut Sink) -> CliResult<Outcome> {
    let r = load_returns(&a.input)?;
    let stats = summary_stats(&r)?;
    let path = sink.write_json("summary.json", &stats)?;
    print!("{}", read_text(&path)?);
    Ok((display(&a.input.input), json!({ "csv": a.input.options().ok() })))
}

fn window_table(res: &RollingResult) -> Table {
    let mut t = Table::new(&[
        "end_index", "c_xx_lag1", "h_xx", "p_xx", "ar_order", "h_xxx", "p_xxx", "degenerate",
    ]);
    for w in &res.records {
        t.push(vec![
            w.end_index.into(),
            w.c_xx_lag1.into(),
            w.h_xx.into(),
            w.p_xx.into(),
            w.ar_order.into(),
            w.h_xxx.into(),
            w.p_xxx.into(),
            w.degenerate.into(),
        ]);
    }
    t
}

fn roll(a: &RollArgs, sink: &mut Sink, exec: Exec) -> CliResult<Outcome> {
    let r = load_returns(&a.input)?;
    let mut sweep = Table::new(&["n", "windows", "percent_linear", "percent_nonlinear"]);
    let mut configs = Vec::new();
    for &n in &a.n {
        let cfg = window_config(n, &a.params)?;
        let res = roll_with(&r, &cfg, a.stride, exec)?;
        sink.write_table(&format!("windows_n{n}"), &window_table(&res))?;
        let lin = percent_significant(&significance_flags(&res.records, Which::Linear, cfg.alpha))?;
        let non = percent_significant(&significance_flags(&res.records, Which::Nonlinear, cfg.alpha))?;
        sweep.push(vec![n.into(), res.records.len().into(), lin.into(), non.into()]);
        configs.push(cfg);
    }
    sink.write_table("sweep", &sweep)?;
    Ok((
        display(&a.input.input),
        json!({ "csv": a.input.options().ok(), "windows": configs, "stride": a.stride }),
    ))
}

#[derive(Deserialize)]
struct SizeRow {
    size: u64,
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Reads a CSV (with header) or JSON array of records.
fn read_records<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<Vec<T>> {
    let bad = |detail: String| CliError::BadFile {
        path: path.to_path_buf(),
        detail,
    };
    let text = read_text(path)?;
    if is_json(path) {
        return serde_json::from_str(&text).map_err(|e| bad(e.to_string()));
    }
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .map_err(|e| bad(e.to_string()))
}

fn clusters(a: &ClustersArgs, sink: &mut Sink) -> CliResult<Outcome> {
    let records: Vec<WindowResult> = read_records(&a.input)?;
    if records.is_empty() {
        return Err(transcorr::Error::EmptyInput.into());
    }
    let n_guess = records[0].end_index;
    let res = RollingResult {
        cfg: WindowConfig::new(n_guess.max(4)),
        stride: 1,
        series_length: records.last().map_or(0, |w| w.end_index),
        records,
    };
    let table = clusters_from_rolling(&res, a.which, a.alpha);
    let which = match a.which {
        Which::Linear => "linear",
        Which::Nonlinear => "nonlinear",
    };

    let mut ct = Table::new(&["cluster_id", "start", "end", "size"]);
    for (i, c) in table.clusters.iter().enumerate() {
        ct.push(vec![i.into(), c.start.into(), c.end.into(), c.size.into()]);
    }
    sink.write_table(&format!("clusters_{which}"), &ct)?;

    let mut cc = Table::new(&["size", "ccdf"]);
    if !table.clusters.is_empty() {
        for (s, f) in size_distribution(&table)?.ccdf {
            cc.push(vec![(s as usize).into(), f.into()]);
        }
    }
    sink.write_table(&format!("ccdf_{which}"), &cc)?;

    let pct = percent_significant(&significance_flags(&res.records, a.which, a.alpha))?;
    println!(
        "percent_significant {which} {} ({} of {} windows, {} clusters)",
        crate::output::real(pct),
        table.clusters.iter().map(|c| c.size).sum::<usize>(),
        table.total_positions,
        table.clusters.len()
    );
    Ok((display(&a.input), json!({ "which": a.which, "alpha": a.alpha })))
}

fn plfit(a: &PlfitArgs, seed: u64, sink: &mut Sink, exec: Exec) -> CliResult<Outcome> {
    let rows: Vec<SizeRow> = read_records(&a.input)?;
    let sizes: Vec<u64> = rows.into_iter().map(|r| r.size).collect();
    let mut distinct = sizes.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 10 {
        return Err(transcorr::Error::InsufficientData(format!(
            "{} distinct cluster sizes, need at least 10",
            distinct.len()
        ))
        .into());
    }
    let opts = FitOptions { min_tail: a.min_tail };
    let mut fit = fit_powerlaw(&sizes, &opts)?;
    if a.reps > 0 {
        fit.bootstrap_p = Some(bootstrap_pvalue(&sizes, &fit, a.reps, seed, &opts, exec)?);
        fit.seed = Some(seed);
    }
    fit.reps = a.reps;
    let report = json!({
        "x_min": fit.x_min,
        "alpha": fit.alpha,
        "ks": fit.ks,
        "n_tail": fit.n_tail,
        "n_total": fit.n_total,
        "bootstrap_p": fit.bootstrap_p,
        "reps": fit.reps,
        "seed": fit.seed,
    });
    let path = sink.write_json("plfit.json", &report)?;
    print!("{}", read_text(&path)?);
    Ok((
        display(&a.input),
        json!({ "reps": a.reps, "seed": seed, "min_tail": a.min_tail }),
    ))
}

fn predict(a: &PredictArgs, sink: &mut Sink, exec: Exec) -> CliResult<Outcome> {
    let r = load_returns(&a.input)?;
    let cfg = window_config(a.n, &a.params)?;
    let res = roll_with(&r, &cfg, 1, exec)?;
    let records = run_predictions(&r, &res, cfg.alpha);
    let table: ClusterTable = clusters_from_rolling(&res, Which::Linear, cfg.alpha);

    let mut pt = Table::new(&["target_index", "predicted", "actual_sign", "p_xx", "cluster_id", "hit"]);
    for p in &records {
        pt.push(vec![
            p.target_index.into(),
            p.predicted.into(),
            p.actual_sign.into(),
            p.p_xx_at_t.into(),
            p.cluster_id.into(),
            p.hit.into(),
        ]);
    }
    sink.write_table("predictions", &pt)?;

    let mut cum = Table::new(&["target_index", "running_hit_rate"]);
    for (t, h) in cumulative_hit_rate(&records) {
        cum.push(vec![t.into(), h.into()]);
    }
    sink.write_table("cumulative_hit_rate", &cum)?;

    let mut by = Table::new(&["cluster_id", "size", "decisions", "hit_rate"]);
    for c in hit_rate_by_cluster(&records, &table) {
        by.push(vec![c.cluster_id.into(), c.size.into(), c.decisions.into(), c.hit_rate.into()]);
    }
    sink.write_table("cluster_hit_rate", &by)?;

    let summary = hit_rate(&records);
    let path = sink.write_json("hit_rate.json", &summary)?;
    print!("{}", read_text(&path)?);
    Ok((
        display(&a.input.input),
        json!({ "csv": a.input.options().ok(), "window": cfg }),
    ))
}

fn simulate(a: &SimulateArgs, seed: u64, sink: &mut Sink) -> CliResult<Outcome> {
    let spec = GeneratorSpec {
        kind: a.kind.into(),
        length: a.length,
        seed,
        ar_coefficients: a.ar_coeffs.clone(),
        innovation_sd: a.innovation_sd,
        burn_in: a.burn_in,
    };
    let series = generate(&spec)?;
    let values = if a.as_prices {
        PriceSeries::from_returns(&series.returns, series.label.clone())?.prices
    } else {
        series.returns
    };
    let mut text = String::with_capacity(values.len() * 24);
    for v in &values {
        text.push_str(&crate::output::real(*v));
        text.push('\n');
    }
    sink.write_text(&a.out, &text)?;
    Ok((None, json!({ "generator": spec, "as_prices": a.as_prices })))
}
