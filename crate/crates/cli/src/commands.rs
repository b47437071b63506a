//! The configuration-driven subcommands.

use crate::table::{Sink, Table};
use crate::{row, Global, Status};
use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use superpos::harness::{self, CompareOptions, ExperimentSpec, SweepGrid, SweepResult};
use superpos::theory::{
    accuracy_approx, accuracy_model, accuracy_plate, capacity_search, item_info, score_model, Approximation, Objective,
    Quadrature, ScoreModel, SnrScenario,
};

pub fn read_config<T: DeserializeOwned>(g: &Global) -> Result<T> {
    let Some(path) = &g.config else { bail!("this command needs --config <file>") };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn command_line() -> Vec<String> {
    std::env::args().collect()
}

/// Sidecar contents: the command line and the configuration actually used.
pub fn meta(resolved: impl Serialize) -> Result<Value> {
    Ok(json!({ "command": command_line(), "resolved": serde_json::to_value(resolved)? }))
}

fn apply_overrides(g: &Global, spec: &mut ExperimentSpec) {
    if let Some(s) = g.seed {
        spec.seed = s;
    }
    if let Some(t) = g.trials {
        spec.trials = t;
    }
}

#[derive(clap::Args, Debug)]
pub struct TheoryArgs {
    /// Comma-separated SNR values.
    #[arg(long, value_delimiter = ',')]
    snr: Vec<f64>,
    /// Comma-separated codebook sizes D.
    #[arg(long, value_delimiter = ',')]
    tokens: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum TheoryConfig {
    /// Accuracy and its approximations on an SNR by D grid.
    Accuracy { snr: Vec<f64>, tokens: Vec<usize> },
    /// Score model and accuracy of each scenario.
    Scenarios { scenarios: Vec<SnrScenario>, tokens: Vec<usize> },
}

pub fn theory(g: &Global, sink: &Sink, args: &TheoryArgs) -> Result<Status> {
    let config = if g.config.is_some() {
        read_config(g)?
    } else {
        if args.snr.is_empty() || args.tokens.is_empty() {
            bail!("theory needs --snr and --tokens, or --config");
        }
        TheoryConfig::Accuracy { snr: args.snr.clone(), tokens: args.tokens.clone() }
    };
    let q = Quadrature::default();
    let table = match &config {
        TheoryConfig::Accuracy { snr, tokens } => {
            let mut t = Table::new(&["s", "D", "p_corr", "p_fa", "p_fa_cr", "p_fa_cr_lee", "p_chang", "p_plate", "item_info"]);
            for &d in tokens {
                for &s in snr {
                    if !(s >= 0.0) || d < 1 {
                        bail!("need s >= 0 and D >= 1, got s={s}, D={d}");
                    }
                    let p = accuracy_model(ScoreModel::equal_variance(s), d, None, &q);
                    t.push(row![
                        s,
                        d,
                        p,
                        accuracy_approx(s, d, Approximation::Fa),
                        accuracy_approx(s, d, Approximation::FaCr),
                        accuracy_approx(s, d, Approximation::FaCrLee),
                        accuracy_approx(s, d, Approximation::Chang),
                        accuracy_plate(s, d),
                        item_info(p, d)
                    ]);
                }
            }
            t
        }
        TheoryConfig::Scenarios { scenarios, tokens } => {
            let mut t = Table::new(&["scenario", "s", "spread", "D", "p_corr", "item_info"]);
            for sc in scenarios {
                let m = score_model(sc)?;
                let name = serde_json::to_string(sc)?;
                for &d in tokens {
                    let p = accuracy_model(m, d, None, &q);
                    t.push(row![name.clone(), m.snr, m.spread, d, p, item_info(p, d)]);
                }
            }
            t
        }
    };
    sink.emit("theory", &table, meta(&config)?)?;
    Ok(Status::Ok)
}

fn log_rows(g: &Global, r: &SweepResult) {
    if g.verbose > 0 {
        eprintln!("{} rows", r.rows.len());
    }
}

pub fn simulate(g: &Global, sink: &Sink) -> Result<Status> {
    let mut spec: ExperimentSpec = read_config(g)?;
    apply_overrides(g, &mut spec);
    let r = harness::run_trials(&spec)?;
    log_rows(g, &r);
    sink.emit("simulate", &Table::from_records(&r.rows)?, meta(&spec)?)?;
    Ok(Status::Ok)
}

fn grid_specs(g: &Global, mut grid: SweepGrid) -> Result<(SweepGrid, Vec<ExperimentSpec>)> {
    apply_overrides(g, &mut grid.base);
    let specs = grid.expand()?;
    Ok((grid, specs))
}

pub fn sweep(g: &Global, sink: &Sink) -> Result<Status> {
    let (grid, specs) = grid_specs(g, read_config(g)?)?;
    if g.verbose > 0 {
        eprintln!("{} experiments", specs.len());
    }
    let r = harness::run_sweep(&specs)?;
    log_rows(g, &r);
    sink.emit("sweep", &Table::from_records(&r.rows)?, meta(&grid)?)?;
    Ok(Status::Ok)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum CompareConfig {
    Grid(SweepGrid),
    Spec(ExperimentSpec),
}

pub fn compare(g: &Global, sink: &Sink) -> Result<Status> {
    let config: CompareConfig = read_config(g)?;
    let (resolved, specs) = match config {
        CompareConfig::Grid(grid) => {
            let (grid, specs) = grid_specs(g, grid)?;
            (CompareConfig::Grid(grid), specs)
        }
        CompareConfig::Spec(mut spec) => {
            apply_overrides(g, &mut spec);
            (CompareConfig::Spec(spec.clone()), vec![spec])
        }
    };
    let r = harness::run_sweep(&specs)?;
    let options = CompareOptions { sigmas: g.tolerance_sigmas, ..CompareOptions::default() };
    let report = harness::compare(&r, options);
    sink.emit("compare", &Table::from_records(&r.rows)?, meta(&resolved)?)?;
    sink.emit("compare.checks", &Table::from_records(&report.checks)?, meta(&resolved)?)?;
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    eprintln!(
        "{verdict}: {}/{} rows within {} SE ({} skipped)",
        report.passed,
        report.checks.len(),
        report.sigmas,
        report.skipped
    );
    if g.verbose > 0 {
        for c in report.checks.iter().filter(|c| !c.pass) {
            eprintln!("  {} M={} K={}: {:.4} vs {:.4} (z {:+.2})", c.label, c.length, c.lookback, c.empirical, c.theory, c.z);
        }
    }
    Ok(if report.pass { Status::Ok } else { Status::CheckFailed })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Grid {
    Values(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl Grid {
    fn values(&self) -> Result<Vec<f64>> {
        match *self {
            Grid::Values(ref v) => Ok(v.clone()),
            Grid::Range { start, stop, step } => {
                if !(step > 0.0) || stop < start {
                    bail!("grid range needs step > 0 and stop >= start");
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                Ok((0..=n).map(|i| start + i as f64 * step).collect())
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptimizeConfig {
    objective: Objective,
    n_dim: usize,
    n_tokens: usize,
    grid: Grid,
}

pub fn optimize(g: &Global, sink: &Sink) -> Result<Status> {
    let config: OptimizeConfig = read_config(g)?;
    let grid = config.grid.values()?;
    let r = capacity_search(&config.objective, config.n_dim, config.n_tokens, &grid, &Quadrature::default())?;
    let mut t = Table::new(&["param", "i_per_neuron", "best"]);
    for (i, (&v, &c)) in r.grid.iter().zip(&r.per_neuron).enumerate() {
        t.push(row![v, c, i == r.best_index]);
    }
    eprintln!("best {} at {} bits/neuron ({} bits total)", r.best_param, r.i_per_neuron, r.i_total);
    sink.emit("optimize", &t, meta(&config)?)?;
    let mut curve = Table::new(&["K", "p_corr", "item_info"]);
    for (k, (&p, &i)) in r.p_corr.iter().zip(&r.item_info).enumerate() {
        curve.push(row![k, p, i]);
    }
    if sink.out.is_some() {
        sink.emit("optimize.best", &curve, meta(&config)?)?;
    }
    Ok(Status::Ok)
}
