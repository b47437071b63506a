//! Preset tables: fixed parameter sets that regenerate the standard
//! accuracy, information and capacity curves.

mod buffers;
mod linear;

use crate::commands::meta;
use crate::table::{Cell, Sink, Table};
use crate::{row, Global, Status};
use anyhow::{bail, Result};
use serde_json::Value;
use superpos::harness::{run_trials, ExperimentSpec, SweepResult};
use superpos::seed;
use superpos::theory::{accuracy_model, NonlinearSnr, Quadrature, ScoreModel};
use superpos::{BindingKind, Scheme};

pub struct Ctx {
    trials: Option<usize>,
    seed: u64,
    verbose: u8,
}

impl Ctx {
    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    /// Experiment `index` of a preset, with its own seed.
    fn spec(&self, index: u64, scheme: Scheme, binding: BindingKind, n: usize, d: usize, lengths: Vec<usize>, trials: usize) -> ExperimentSpec {
        let mut s = ExperimentSpec::new(scheme, binding, n, d, lengths, self.trials(trials));
        s.seed = seed::derive(self.seed, index);
        s
    }

    fn hdc(&self, index: u64, n: usize, d: usize, lengths: Vec<usize>, trials: usize) -> ExperimentSpec {
        self.spec(index, Scheme::Hdc, BindingKind::Permutation, n, d, lengths, trials)
    }

    fn run(&self, spec: &ExperimentSpec) -> Result<SweepResult> {
        if self.verbose > 0 {
            eprintln!("running {} trials: N={} D={} M={:?}", spec.trials, spec.n_dim, spec.n_tokens, spec.lengths);
        }
        Ok(run_trials(spec)?)
    }
}

pub struct Output {
    pub table: Table,
    /// Parameters recorded in the sidecar.
    pub config: Value,
}

struct Preset {
    id: &'static str,
    about: &'static str,
    run: fn(&Ctx) -> Result<Output>,
}

const OUT_OF_SCOPE: &[(&str, &str)] = &[
    ("2G", "capacity of hardware-constrained codes"),
    ("2H", "comparison against published benchmark numbers"),
];

fn presets() -> Vec<Preset> {
    let mut v = linear::presets();
    v.extend(buffers::presets());
    v
}

pub fn list() {
    for p in presets() {
        println!("{:<6} {}", p.id, p.about);
    }
    for (id, what) in OUT_OF_SCOPE {
        println!("{id:<6} not provided: {what}");
    }
}

pub fn figure(g: &Global, sink: &Sink, id: &str) -> Result<Status> {
    let key = id.to_ascii_uppercase();
    if let Some((_, what)) = OUT_OF_SCOPE.iter().find(|(i, _)| *i == key) {
        println!("preset {key} is out of scope for this tool ({what}); nothing to do");
        return Ok(Status::Ok);
    }
    let Some(p) = presets().into_iter().find(|p| p.id == key) else {
        bail!("unknown preset {id:?}; see `superpos figure --list`");
    };
    let ctx = Ctx { trials: g.trials, seed: g.seed.unwrap_or(0), verbose: g.verbose };
    if ctx.trials == Some(0) {
        bail!("trials must be at least 1");
    }
    let out = (p.run)(&ctx)?;
    let config = serde_json::json!({ "preset": key, "about": p.about, "seed": ctx.seed, "parameters": out.config });
    sink.emit(&format!("figure-{}", key.to_ascii_lowercase()), &out.table, meta(config)?)?;
    Ok(Status::Ok)
}

// ---- shared helpers ----

const SIM_COLUMNS: [&str; 7] = ["M", "K", "N", "p_theory", "p_empirical", "ci_lo", "ci_hi"];

/// Simulation table: the given leading columns followed by the standard ones.
fn sim_table(leading: &[&str]) -> Table {
    let cols: Vec<&str> = leading.iter().copied().chain(SIM_COLUMNS).collect();
    Table::new(&cols)
}

fn push_sim(t: &mut Table, leading: Vec<Cell>, r: &SweepResult) {
    for row in &r.rows {
        let mut cells = leading.clone();
        cells.extend(row![row.length, row.lookback, row.n_dim, row.theory, row.accuracy, row.ci_lo, row.ci_hi]);
        t.push(cells);
    }
}

fn acc(model: ScoreModel, d: usize) -> f64 {
    accuracy_model(model, d, None, &Quadrature::default())
}

fn tracked(r: &NonlinearSnr) -> ScoreModel {
    ScoreModel { snr: r.snr, spread: r.spread }
}

/// `start, start+step, …` up to and including `stop`.
fn steps(start: usize, stop: usize, step: usize) -> Vec<usize> {
    (start..=stop).step_by(step).collect()
}

fn grid_f(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

/// Contractions 1 − 10^(−x) for x from `lo` to `hi`.
fn lambda_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    grid_f(lo, hi, step).into_iter().map(|x| 1.0 - 10f64.powf(-x)).collect()
}
