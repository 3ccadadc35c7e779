//! One function per subcommand. Each returns what should go to stdout plus
//! the files to write; nothing touches the filesystem until the whole
//! command has succeeded.

use std::path::Path;

use serde_json::{json, Map, Value};

use dftstat::experiments::{lag_scan, power_profile, rejection_rate, sigma_fourier, McConfig, PowerGrid};
use dftstat::input::read_series;
use dftstat::numerics::RngStream;
use dftstat::simulate::{generate, local_spectrum, local_spectrum_for_len, GeneratorConfig, ModelSpec};
use dftstat::stattest::{segment_test, TestConfig, TestResult};
use dftstat::{Error, Result};

use crate::args::{
    load_model, parse_lags, Format, InputArgs, McCmd, PowerCmd, ScanCmd, SegmentCmd, SimulateCmd,
    TestCmd,
};
use crate::output::{csv, level_key, num, table, to_json, Artifacts};

/// Grid for the Fourier coefficients of σ². A multiple of 20 so that the
/// step changes of the piecewise presets fall on grid points.
const SIGMA_GRID: usize = 4000;

#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub artifacts: Artifacts,
    pub warnings: Vec<String>,
}

fn input_json(input: &InputArgs) -> Value {
    json!({
        "input": input.input.display().to_string(),
        "column": input.column,
        "skip_missing": input.skip_missing,
        "transform": input.transform,
    })
}

fn test_config_json(config: &TestConfig) -> Value {
    json!({
        "lags": config.lags,
        "kernel": config.kernel.name(),
        "bandwidth": match config.bandwidth {
            Some(b) => json!(b),
            None => json!("auto"),
        },
        "ridge_factor": config.ridge_factor,
        "correction": config.correction,
        "demean": config.demean,
        "levels": config.levels,
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

fn decisions_json(result: &TestResult) -> (Value, Value) {
    let mut decisions = Map::new();
    let mut critical = Map::new();
    for d in &result.decisions {
        decisions.insert(level_key(d.level), json!(d.reject));
        critical.insert(level_key(d.level), json!(d.critical_value));
    }
    (Value::Object(decisions), Value::Object(critical))
}

fn result_json(result: &TestResult) -> Value {
    let (decisions, critical_values) = decisions_json(result);
    json!({
        "statistic": result.statistic,
        "dof": result.dof,
        "p_value": result.p_value,
        "decisions": decisions,
        "critical_values": critical_values,
        "len": result.len,
        "lags": result.lags,
        "bandwidth": result.kernel.bandwidth,
        "ridge": result.ridge,
        "covariances": result.lags.iter().zip(&result.covariances).map(|(r, c)| json!({
            "lag": r, "re": c.re, "im": c.im,
        })).collect::<Vec<_>>(),
        "corrections": result.corrections,
    })
}

fn join_lags<T: ToString>(lags: &[T]) -> String {
    lags.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn warn_bandwidth(result: &TestResult, context: &str, warnings: &mut Vec<String>) {
    if let Some(w) = &result.bandwidth_warning {
        warnings.push(format!("{context}{w}"));
    }
}

pub fn run_test(cmd: &TestCmd) -> Result<Outcome> {
    let options = cmd.input.read_options()?;
    let config = cmd.test.default_config()?;
    let series = read_series(&cmd.input.input, &options)?;
    let result = config.run(&series)?;
    let mut out = Outcome::default();
    warn_bandwidth(&result, "", &mut out.warnings);

    out.stdout = match cmd.output.format {
        Format::Json => {
            let record = json!({
                "command": "test",
                "config": merge(input_json(&cmd.input), test_config_json(&config)),
                "result": result_json(&result),
            });
            to_json(&record)? + "\n"
        }
        Format::Csv => csv(
            &["statistic", "dof", "p_value", "level", "critical_value", "reject"],
            result.decisions.iter().map(|d| {
                vec![
                    num(result.statistic),
                    result.dof.to_string(),
                    num(result.p_value),
                    level_key(d.level),
                    num(d.critical_value),
                    d.reject.to_string(),
                ]
            }),
        ),
        Format::Text => {
            let mut s = format!(
                "series     {} (T = {})\nlags       {}\nkernel     {} b = {}{}\nridge      {}\ncorrection {}\n\nstatistic  {}\ndof        {}\np-value    {}\n\n",
                cmd.input.input.display(),
                result.len,
                join_lags(&result.lags),
                result.kernel.kind.name(),
                num(result.kernel.bandwidth),
                if config.bandwidth.is_none() { " (auto)" } else { "" },
                num(result.ridge),
                result.correction.mode_name(),
                num(result.statistic),
                result.dof,
                num(result.p_value),
            );
            let rows: Vec<Vec<String>> = result
                .decisions
                .iter()
                .map(|d| {
                    vec![
                        level_key(d.level),
                        num(d.critical_value),
                        if d.reject { "reject" } else { "accept" }.to_string(),
                    ]
                })
                .collect();
            s.push_str(&table(&["level", "critical_value", "decision"], &rows));
            s
        }
    };
    Ok(out)
}

pub fn run_segment(cmd: &SegmentCmd) -> Result<Outcome> {
    let options = cmd.input.read_options()?;
    let config = cmd.test.default_config()?;
    let series = read_series(&cmd.input.input, &options)?;
    let report = segment_test(&series, cmd.depth, &config)?;
    let mut out = Outcome::default();
    for b in &report.blocks {
        warn_bandwidth(&b.result, &format!("block ({}, {}): ", b.depth, b.index), &mut out.warnings);
    }

    let rows: Vec<Vec<String>> = report
        .blocks
        .iter()
        .map(|b| {
            vec![
                b.depth.to_string(),
                b.index.to_string(),
                b.start.to_string(),
                b.end.to_string(),
                b.len().to_string(),
                num(b.result.statistic),
                b.result.dof.to_string(),
                num(b.result.p_value),
            ]
        })
        .collect();
    let header = ["depth", "index", "start", "end", "len", "statistic", "dof", "p_value"];
    out.stdout = match cmd.output.format {
        Format::Json => {
            let full = &report.block(0, 0).expect("depth 0 block").result;
            let blocks: Vec<Value> = report
                .blocks
                .iter()
                .map(|b| {
                    let (decisions, _) = decisions_json(&b.result);
                    json!({
                        "depth": b.depth,
                        "index": b.index,
                        "start": b.start,
                        "end": b.end,
                        "len": b.len(),
                        "statistic": b.result.statistic,
                        "dof": b.result.dof,
                        "p_value": b.result.p_value,
                        "bandwidth": b.result.kernel.bandwidth,
                        "decisions": decisions,
                    })
                })
                .collect();
            let mut config_json = merge(input_json(&cmd.input), test_config_json(&config));
            config_json["depth"] = json!(cmd.depth);
            let record = json!({
                "command": "segment",
                "config": config_json,
                "result": result_json(full),
                "blocks": blocks,
            });
            to_json(&record)? + "\n"
        }
        Format::Csv => csv(&header, rows),
        Format::Text => format!(
            "series {} (T = {}), lags {}, depth {}\n\n{}",
            cmd.input.input.display(),
            series.len(),
            join_lags(&config.lags),
            cmd.depth,
            table(&header, &rows)
        ),
    };
    Ok(out)
}

fn model_json(name: &str, spec: &ModelSpec) -> Value {
    json!({ "model": name, "model_spec": spec })
}

pub fn run_simulate(cmd: &SimulateCmd) -> Result<Outcome> {
    let spec = load_model(&cmd.model)?;
    let gen = GeneratorConfig::new(cmd.len, RngStream::new(cmd.seed, cmd.stream))
        .with_burn_in(cmd.burn_in);
    let series = generate(&spec, &gen)?;
    let path = cmd
        .out
        .clone()
        .unwrap_or_else(|| cmd.out_dir.out_dir.join("series.txt"));

    let mut out = Outcome::default();
    let body: String = series.iter().map(|x| num(*x) + "\n").collect();
    out.artifacts.add(path.clone(), body);
    let shown = path.display().to_string();
    out.stdout = match cmd.output.format {
        Format::Json => {
            let mut config = model_json(&cmd.model, &spec);
            config["T"] = json!(cmd.len);
            config["seed"] = json!(cmd.seed);
            config["stream"] = json!(cmd.stream);
            config["burn_in"] = json!(cmd.burn_in);
            let record = json!({
                "command": "simulate",
                "config": config,
                "result": { "path": shown, "len": series.len() },
            });
            to_json(&record)? + "\n"
        }
        Format::Csv => csv(&["path", "len"], [vec![shown, series.len().to_string()]]),
        Format::Text => format!("wrote {} values to {shown}\n", series.len()),
    };
    Ok(out)
}

fn mc_config_json(name: &str, cfg: &McConfig) -> Value {
    let mut v = merge(model_json(name, &cfg.model), test_config_json(&cfg.test));
    v["T"] = json!(cfg.len);
    v["N"] = json!(cfg.replications);
    v["seed"] = json!(cfg.master_seed);
    v["burn_in"] = json!(cfg.burn_in);
    v["level"] = json!(cfg.level);
    v
}

fn out_path(dir: &Path, name: &str) -> std::path::PathBuf {
    dir.join(name)
}

pub fn run_mc(cmd: &McCmd) -> Result<Outcome> {
    let mut cfg = cmd.mc.mc_config()?;
    cfg.bins = cmd.bins;
    cfg.validate()?;
    let report = rejection_rate(&cfg)?;
    let dir = &cmd.mc.out_dir.out_dir;

    let mut out = Outcome::default();
    out.artifacts.add(
        out_path(dir, "statistics.csv"),
        csv(
            &["replication", "statistic"],
            report
                .statistics
                .iter()
                .enumerate()
                .map(|(i, s)| vec![i.to_string(), num(*s)]),
        ),
    );
    let h = &report.histogram;
    out.artifacts.add(
        out_path(dir, "histogram.csv"),
        csv(
            &["lower", "upper", "count", "density"],
            (0..h.counts.len()).map(|i| {
                vec![num(h.edges[i]), num(h.edges[i + 1]), h.counts[i].to_string(), num(h.density[i])]
            }),
        ),
    );
    let report_path = out_path(dir, "report.json");
    let mut config = mc_config_json(&cmd.mc.model, &cfg);
    config["bins"] = json!(cfg.bins);
    let record = json!({
        "command": "mc",
        "config": config,
        "rejection_rate": report.rejection_rate,
        "rejections": report.rejections,
        "critical_value": report.critical_value,
        "histogram": {
            "edges": h.edges,
            "counts": h.counts,
            "density": h.density,
        },
        "files": [
            out_path(dir, "statistics.csv").display().to_string(),
            out_path(dir, "histogram.csv").display().to_string(),
            report_path.display().to_string(),
        ],
    });
    let record = to_json(&record)? + "\n";
    out.artifacts.add(report_path, record.clone());

    out.stdout = match cmd.mc.output.format {
        Format::Json => record,
        Format::Csv => csv(
            &["rejection_rate", "rejections", "replications", "critical_value"],
            [vec![
                num(report.rejection_rate),
                report.rejections.to_string(),
                cfg.replications.to_string(),
                num(report.critical_value),
            ]],
        ),
        Format::Text => format!(
            "model {} T = {} N = {} seed {} lags {}\nlevel {} critical value {}\nrejections {} rejection rate {}\nwrote {}\n",
            cmd.mc.model,
            cfg.len,
            cfg.replications,
            cfg.master_seed,
            join_lags(&cfg.test.lags),
            level_key(cfg.level),
            num(report.critical_value),
            report.rejections,
            num(report.rejection_rate),
            out.artifacts.paths().join(", "),
        ),
    };
    Ok(out)
}

pub fn run_scan(cmd: &ScanCmd) -> Result<Outcome> {
    let cfg = cmd.mc.mc_config()?;
    cfg.validate()?;
    let report = lag_scan(&cfg)?;
    let rows: Vec<Vec<String>> = report
        .lags
        .iter()
        .zip(&report.rejection_rates)
        .map(|(r, p)| vec![r.to_string(), num(*p)])
        .collect();
    let header = ["lag", "rejection_rate"];
    let mut out = Outcome::default();
    let path = out_path(&cmd.mc.out_dir.out_dir, "scan.csv");
    out.artifacts.add(path.clone(), csv(&header, rows.clone()));

    out.stdout = match cmd.mc.output.format {
        Format::Json => {
            let record = json!({
                "command": "scan",
                "config": mc_config_json(&cmd.mc.model, &cfg),
                "critical_value": report.critical_value,
                "lags": report.lags,
                "rejection_rates": report.rejection_rates,
                "files": [path.display().to_string()],
            });
            to_json(&record)? + "\n"
        }
        Format::Csv => csv(&header, rows),
        Format::Text => format!(
            "model {} T = {} N = {} seed {}, chi2(2) critical value {}\n\n{}",
            cmd.mc.model,
            cfg.len,
            cfg.replications,
            cfg.master_seed,
            num(report.critical_value),
            table(&header, &rows)
        ),
    };
    Ok(out)
}

/// σ² as a function of rescaled time, for models whose local spectrum is
/// σ²(u) times a time-invariant factor.
fn variance_curve(spec: &ModelSpec, len: Option<usize>) -> Option<Box<dyn Fn(f64) -> f64 + '_>> {
    match spec {
        ModelSpec::ModulatedNoise { sigma } => Some(Box::new(move |u| sigma.eval(u).powi(2))),
        ModelSpec::TvInnovationAr { sigma, time_scale, .. } => {
            let stretch = match (len, time_scale) {
                (Some(len), Some(scale)) => len as f64 / scale,
                _ => 1.0,
            };
            Some(Box::new(move |u| sigma.eval(u * stretch).powi(2)))
        }
        _ => None,
    }
}

pub fn run_power(cmd: &PowerCmd) -> Result<Outcome> {
    let spec = load_model(&cmd.model)?;
    let lags = parse_lags(&cmd.lags)?;
    if cmd.len == Some(0) {
        return Err(Error::InvalidInput("--T must be positive".into()));
    }
    let grid = PowerGrid::new(cmd.u_grid, cmd.omega_grid)?;
    let f = match cmd.len {
        Some(len) => local_spectrum_for_len(&spec, len)?,
        None => local_spectrum(&spec)?,
    };
    let profile = power_profile(&f, &lags, grid, cmd.len, None)?;
    let sigma2 = match variance_curve(&spec, cmd.len) {
        Some(v2) => Some(
            lags.iter()
                .map(|&r| sigma_fourier(&v2, r, SIGMA_GRID))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };

    let rows: Vec<Vec<String>> = lags
        .iter()
        .zip(&profile.b_values)
        .map(|(r, b)| vec![r.to_string(), num(b.re), num(b.im), num(b.norm())])
        .collect();
    let header = ["lag", "re", "im", "abs"];
    let mut out = Outcome::default();
    let path = out_path(&cmd.out_dir.out_dir, "power.csv");
    out.artifacts.add(path.clone(), csv(&header, rows.clone()));

    out.stdout = match cmd.output.format {
        Format::Json => {
            let mut config = model_json(&cmd.model, &spec);
            config["lags"] = json!(lags);
            config["T"] = json!(cmd.len);
            config["u_grid"] = json!(cmd.u_grid);
            config["omega_grid"] = json!(cmd.omega_grid);
            let entry = |r: &i64, z: &dftstat::numerics::Complex64| {
                json!({ "lag": r, "re": z.re, "im": z.im, "abs": z.norm() })
            };
            let record = json!({
                "command": "power",
                "config": config,
                "b": lags.iter().zip(&profile.b_values).map(|(r, z)| entry(r, z)).collect::<Vec<_>>(),
                "mu": profile.mu,
                "sigma2_fourier": sigma2.as_ref().map(|a| {
                    lags.iter().zip(a).map(|(r, z)| entry(r, z)).collect::<Vec<_>>()
                }),
                "files": [path.display().to_string()],
            });
            to_json(&record)? + "\n"
        }
        Format::Csv => csv(&header, rows),
        Format::Text => {
            let mut text_rows = rows;
            let mut text_header = header.to_vec();
            if let Some(a) = &sigma2 {
                text_header.push("abs_sigma2_coef");
                for (row, z) in text_rows.iter_mut().zip(a) {
                    row.push(num(z.norm()));
                }
            }
            format!(
                "model {}{}\n\n{}",
                cmd.model,
                cmd.len.map(|t| format!(" T = {t}")).unwrap_or_default(),
                table(&text_header, &text_rows)
            )
        }
    };
    Ok(out)
}
