//! Networks that forget: decay, clipping and tanh saturation, their
//! information curves, optimal parameters and time constants.

use super::{acc, lambda_grid, push_sim, sim_table, steps, tracked, Ctx, Output, Preset};
use crate::row;
use crate::table::Table;
use anyhow::Result;
use serde_json::json;
use superpos::harness::Lookbacks;
use superpos::memory::Activation;
use superpos::theory::{
    capacity_search, filled_curve, item_info, matched_contraction, nonlinear_snr, score_model, storage_bits,
    time_constant, uniform_variance, CapacityResult, NonlinearSpec, Objective, Quadrature, SnrScenario, Start,
    TimeConstant, TrackerMode,
};

pub(super) fn presets() -> Vec<Preset> {
    vec![
        Preset { id: "4A1", about: "filled decay network: accuracy vs lookback for three contractions, N=1000, D=27", run: p4a1 },
        Preset { id: "4B1", about: "filled decay network: information per neuron vs contraction, N=1000, D=27", run: p4b1 },
        Preset { id: "4C1", about: "filled decay network: information per neuron vs contraction, N=1000, D=64", run: p4c1 },
        Preset { id: "4D1", about: "decay network of finite length, contraction 0.988: accuracy vs lookback", run: p4d1 },
        Preset { id: "4A2", about: "simulated filled decay network, N=10000, D=32, contraction 0.996", run: p4a2 },
        Preset { id: "4B2", about: "filled decay network: information per neuron vs contraction, N=10000, D=32", run: p4b2 },
        Preset { id: "4C2", about: "filled decay network: information per neuron vs contraction, N=10000, D=64", run: p4c2 },
        Preset { id: "4D2", about: "optimal contraction and capacity vs N, D=27", run: p4d2 },
        Preset { id: "4E", about: "information per neuron vs contraction for several D, N=1000", run: p4e },
        Preset { id: "4F", about: "optimal contraction and its time constant vs D, N=1000", run: p4f },
        Preset { id: "5A1", about: "filled clipped network: accuracy vs lookback, kappa in {3, 7, 15}, N=5000, D=27", run: p5a1 },
        Preset { id: "5A2", about: "simulated filled clipped network, kappa in {3, 7, 15}, N=5000, D=27", run: p5a2 },
        Preset { id: "5B1", about: "clipped network from empty: first-item accuracy vs M, N=5000, D=27", run: p5b1 },
        Preset { id: "5B2", about: "simulated clipped network from empty, N=5000, D=27", run: p5b2 },
        Preset { id: "5C", about: "filled clipped network: information and storage efficiency vs kappa, N=5000, D=27", run: p5c },
        Preset { id: "5D", about: "clipped network from empty: information per neuron vs M, N=5000, D=27", run: p5d },
        Preset { id: "5E", about: "filled clipped network at D=256, kappa=20: accuracy vs lookback", run: p5e },
        Preset { id: "5F", about: "filled clipped network: information per neuron vs kappa, N=5000, D=256", run: p5f },
        Preset { id: "5G", about: "optimal clip bound and capacity vs D >= 27, N=5000", run: p5g },
        Preset { id: "6A1", about: "filled tanh network: accuracy vs lookback, gamma in {8, 16, 64}, N=2000, D=32", run: p6a1 },
        Preset { id: "6A2", about: "simulated filled tanh network, gamma in {8, 64}, N=2000, D=32", run: p6a2 },
        Preset { id: "6B1", about: "tanh network from empty: first-item accuracy vs M, N=2000, D=32", run: p6b1 },
        Preset { id: "6B2", about: "simulated tanh network from empty, gamma in {8, 64}, N=2000, D=32", run: p6b2 },
        Preset { id: "6C", about: "filled tanh network: information per neuron vs gamma, N=2000, D=32", run: p6c },
        Preset { id: "6D", about: "filled tanh network: information per neuron vs gamma, N=2000, D=256", run: p6d },
        Preset { id: "6E", about: "optimal gain and capacity vs D, tanh, N=2000", run: p6e },
        Preset { id: "7A", about: "capacity vs N for linear, decay and clipped networks, D=27", run: p7a },
        Preset { id: "7B", about: "time constant vs kappa, with the variance-matched contraction", run: p7b },
        Preset { id: "7C", about: "clipped network vs variance-matched decay network: accuracy vs lookback", run: p7c },
        Preset { id: "7D", about: "kappa maximizing information per stored bit, D in {8, 32, 256, 1024, 4096}", run: p7d },
    ]
}

// tracker bins per unit of state for tanh networks; a whole number keeps the ±1 step exact
const TANH_BINS_PER_UNIT: usize = 32;

fn q() -> Quadrature {
    Quadrature::default()
}

// ---- decay ----

fn p4a1(_: &Ctx) -> Result<Output> {
    let (n, d) = (1000, 27);
    let lambdas = [0.99, 0.996, 0.999];
    let mut t = Table::new(&["lambda", "K", "s", "p_corr", "item_info"]);
    for &l in &lambdas {
        for k in steps(0, 3000, 10) {
            let m = score_model(&SnrScenario::DecayFilled { n_dim: n, contraction: l, lookback: k })?;
            let p = acc(m, d);
            t.push(row![l, k, m.snr, p, item_info(p, d)]);
        }
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "n_tokens": d, "contractions": lambdas, "lookbacks": [0, 3000, 10] }) })
}

fn info_vs_lambda(n: usize, tokens: &[usize], grid: Vec<f64>) -> Result<Output> {
    let mut t = Table::new(&["D", "lambda", "tau", "i_per_neuron", "best"]);
    for &d in tokens {
        let r = capacity_search(&Objective::Contraction { length: None }, n, d, &grid, &q())?;
        for (i, (&l, &c)) in r.grid.iter().zip(&r.per_neuron).enumerate() {
            t.push(row![d, l, time_constant(TimeConstant::Lambda(l))?, c, i == r.best_index]);
        }
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "tokens": tokens, "contractions": grid }) })
}

fn p4b1(_: &Ctx) -> Result<Output> {
    info_vs_lambda(1000, &[27], lambda_grid(1.0, 3.5, 0.1))
}

fn p4c1(_: &Ctx) -> Result<Output> {
    info_vs_lambda(1000, &[64], lambda_grid(1.0, 3.5, 0.1))
}

fn p4d1(_: &Ctx) -> Result<Output> {
    let (n, d, l) = (1000, 27, 0.988);
    let mut t = Table::new(&["M", "K", "s", "p_corr"]);
    for m in [100usize, 300, 1000] {
        for k in (0..m).step_by(5) {
            let model = score_model(&SnrScenario::DecayFinite { n_dim: n, length: m, contraction: l, lookback: k })?;
            t.push(row![m, k, model.snr, acc(model, d)]);
        }
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "n_tokens": d, "contraction": l, "lengths": [100, 300, 1000] }) })
}

fn p4a2(ctx: &Ctx) -> Result<Output> {
    let mut s = ctx.hdc(0, 10000, 32, vec![1], 200);
    s.contraction = 0.996;
    s.start = Start::Filled;
    s.lookbacks = Lookbacks::Fixed(vec![0, 100, 200, 300, 500, 800, 1200]);
    let mut t = sim_table(&["lambda"]);
    push_sim(&mut t, row![s.contraction], &ctx.run(&s)?);
    Ok(Output { table: t, config: json!({ "experiment": s }) })
}

fn p4b2(_: &Ctx) -> Result<Output> {
    info_vs_lambda(10000, &[32], lambda_grid(1.5, 4.0, 0.1))
}

fn p4c2(_: &Ctx) -> Result<Output> {
    info_vs_lambda(10000, &[64], lambda_grid(1.5, 4.0, 0.1))
}

fn best_lambda(n: usize, d: usize, step: f64) -> Result<CapacityResult> {
    // the optimum sits near 1 − 10/N, closer to 1 for small codebooks
    let x0 = (n as f64).log10() - 1.0;
    let top = if d < 8 { x0 + 1.6 } else { x0 + 0.8 };
    let grid = lambda_grid((x0 - 0.6).max(0.3), top, step);
    Ok(capacity_search(&Objective::Contraction { length: None }, n, d, &grid, &q())?)
}

/// False when the best value sits on the edge of the searched grid.
fn interior(r: &CapacityResult) -> bool {
    r.best_index > 0 && r.best_index + 1 < r.grid.len()
}

fn p4d2(_: &Ctx) -> Result<Output> {
    let d = 27;
    let ns = [100usize, 300, 1000, 3000, 10000];
    let mut t = Table::new(&["N", "D", "lambda_opt", "tau", "i_per_neuron", "interior"]);
    for &n in &ns {
        let r = best_lambda(n, d, 0.05)?;
        let tau = time_constant(TimeConstant::Lambda(r.best_param))?;
        t.push(row![n, d, r.best_param, tau, r.i_per_neuron, interior(&r)]);
    }
    Ok(Output { table: t, config: json!({ "n_tokens": d, "n_dim": ns }) })
}

fn p4e(_: &Ctx) -> Result<Output> {
    info_vs_lambda(1000, &[8, 27, 256, 1024], lambda_grid(1.0, 3.5, 0.1))
}

fn p4f(_: &Ctx) -> Result<Output> {
    let n = 1000;
    let tokens = [4usize, 8, 16, 32, 64, 128, 256, 512, 1024];
    let mut t = Table::new(&["D", "N", "lambda_opt", "tau", "i_per_neuron", "interior"]);
    for &d in &tokens {
        let r = best_lambda(n, d, 0.1)?;
        let tau = time_constant(TimeConstant::Lambda(r.best_param))?;
        t.push(row![d, n, r.best_param, tau, r.i_per_neuron, interior(&r)]);
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "tokens": tokens }) })
}

// ---- clipped and tanh ----

fn filled_accuracy(mode: TrackerMode, label: f64, n: usize, d: usize, ks: &[usize], t: &mut Table) -> Result<()> {
    let curve = filled_curve(mode, n, ks.iter().max().copied().unwrap_or(0) + 1)?;
    for &k in ks {
        let r = &curve[k];
        let p = acc(tracked(r), d);
        t.push(row![label, k, r.snr, r.spread, p, item_info(p, d)]);
    }
    Ok(())
}

fn empty_accuracy(mode: TrackerMode, label: f64, n: usize, d: usize, lengths: &[usize], t: &mut Table) -> Result<()> {
    for &m in lengths {
        let r = nonlinear_snr(&NonlinearSpec { mode, n_dim: n, length: Some(m), position: m })?;
        let p = acc(tracked(&r), d);
        t.push(row![label, m, r.snr, r.spread, p, item_info(p, d)]);
    }
    Ok(())
}

const KAPPAS: [u32; 3] = [3, 7, 15];

fn p5a1(_: &Ctx) -> Result<Output> {
    let (n, d) = (5000, 27);
    let ks = steps(0, 800, 10);
    let mut t = Table::new(&["kappa", "K", "s", "spread", "p_corr", "item_info"]);
    for kappa in KAPPAS {
        filled_accuracy(TrackerMode::ExactInteger { kappa }, kappa as f64, n, d, &ks, &mut t)?;
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "n_tokens": d, "kappa": KAPPAS, "lookbacks": [0, 800, 10] }) })
}

fn p5a2(ctx: &Ctx) -> Result<Output> {
    let lookbacks = [vec![0, 10, 20, 30, 40], vec![0, 40, 60, 80, 120, 160], vec![0, 80, 160, 240, 320, 640]];
    let mut t = sim_table(&["kappa"]);
    let mut specs = Vec::new();
    for (i, (kappa, ks)) in KAPPAS.into_iter().zip(lookbacks).enumerate() {
        let mut s = ctx.hdc(i as u64, 5000, 27, vec![1], 500);
        s.activation = Activation::ClippedLinear { kappa };
        s.start = Start::Filled;
        s.lookbacks = Lookbacks::Fixed(ks);
        push_sim(&mut t, row![kappa], &ctx.run(&s)?);
        specs.push(s);
    }
    Ok(Output { table: t, config: json!({ "experiments": specs }) })
}

fn p5b1(_: &Ctx) -> Result<Output> {
    let (n, d) = (5000, 27);
    let lengths = steps(10, 1000, 10);
    let mut t = Table::new(&["kappa", "M", "s", "spread", "p_corr", "item_info"]);
    for kappa in KAPPAS {
        empty_accuracy(TrackerMode::ExactInteger { kappa }, kappa as f64, n, d, &lengths, &mut t)?;
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "n_tokens": d, "kappa": KAPPAS, "lengths": [10, 1000, 10] }) })
}

fn p5b2(ctx: &Ctx) -> Result<Output> {
    let lengths = [vec![5, 10, 20, 40, 80], vec![20, 40, 80, 120, 160, 200], vec![80, 160, 240, 320, 400, 640]];
    let mut t = sim_table(&["kappa"]);
    let mut specs = Vec::new();
    for (i, (kappa, ls)) in KAPPAS.into_iter().zip(lengths).enumerate() {
        let mut s = ctx.hdc(i as u64, 5000, 27, ls, 500);
        s.activation = Activation::ClippedLinear { kappa };
        push_sim(&mut t, row![kappa], &ctx.run(&s)?);
        specs.push(s);
    }
    Ok(Output { table: t, config: json!({ "experiments": specs }) })
}

fn info_vs_kappa(n: usize, d: usize, kappas: Vec<f64>) -> Result<Output> {
    let r = capacity_search(&Objective::ClipBound { length: None }, n, d, &kappas, &q())?;
    let mut t = Table::new(&["kappa", "i_per_neuron", "storage_bits_per_neuron", "bits_per_stored_bit", "best"]);
    for (i, (&k, &c)) in r.grid.iter().zip(&r.per_neuron).enumerate() {
        let stored = storage_bits(n, k as u32)? / n as f64;
        t.push(row![k, c, stored, c / stored, i == r.best_index]);
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "n_tokens": d, "kappa": kappas }) })
}

fn kappa_grid(max: u32) -> Vec<f64> {
    (1..=max).map(f64::from).collect()
}

fn p5c(_: &Ctx) -> Result<Output> {
    info_vs_kappa(5000, 27, kappa_grid(40))
}

fn p5d(_: &Ctx) -> Result<Output> {
    let (n, d) = (5000, 27);
    let lengths = steps(25, 500, 25);
    let mut t = Table::new(&["kappa", "M", "i_per_neuron"]);
    for kappa in KAPPAS {
        let grid = [kappa as f64];
        for &m in &lengths {
            let r = capacity_search(&Objective::ClipBound { length: Some(m) }, n, d, &grid, &q())?;
            t.push(row![kappa, m, r.i_per_neuron]);
        }
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "n_tokens": d, "kappa": KAPPAS, "lengths": [25, 500, 25] }) })
}

fn p5e(_: &Ctx) -> Result<Output> {
    let (n, d, kappa) = (5000, 256, 20);
    let mut t = Table::new(&["kappa", "K", "s", "spread", "p_corr", "item_info"]);
    filled_accuracy(TrackerMode::ExactInteger { kappa }, kappa as f64, n, d, &steps(0, 1500, 10), &mut t)?;
    Ok(Output { table: t, config: json!({ "n_dim": n, "n_tokens": d, "kappa": kappa, "lookbacks": [0, 1500, 10] }) })
}

fn p5f(_: &Ctx) -> Result<Output> {
    info_vs_kappa(5000, 256, kappa_grid(40))
}

fn p5g(_: &Ctx) -> Result<Output> {
    let n = 5000;
    let tokens = [27usize, 64, 256, 1024, 4096];
    let grid = kappa_grid(40);
    let mut t = Table::new(&["D", "N", "kappa_opt", "i_per_neuron", "interior"]);
    for &d in &tokens {
        let r = capacity_search(&Objective::ClipBound { length: None }, n, d, &grid, &q())?;
        t.push(row![d, n, r.best_param, r.i_per_neuron, interior(&r)]);
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "tokens": tokens, "kappa": grid }) })
}

fn tanh(gamma: f64) -> TrackerMode {
    TrackerMode::DiscretizedSquash { gamma, half_bins: gamma as usize * TANH_BINS_PER_UNIT }
}

fn p6a1(_: &Ctx) -> Result<Output> {
    let (n, d) = (2000, 32);
    let gammas = [8.0, 16.0, 64.0];
    let ks = steps(0, 600, 5);
    let mut t = Table::new(&["gamma", "K", "s", "spread", "p_corr", "item_info"]);
    for g in gammas {
        filled_accuracy(tanh(g), g, n, d, &ks, &mut t)?;
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "n_tokens": d, "gamma": gammas, "tracker_bins_per_unit": TANH_BINS_PER_UNIT }) })
}

fn p6a2(ctx: &Ctx) -> Result<Output> {
    let cases = [(8.0, vec![0, 10, 20, 30, 50]), (64.0, vec![10, 30, 100, 200, 300])];
    let mut t = sim_table(&["gamma"]);
    let mut specs = Vec::new();
    for (i, (gamma, ks)) in cases.into_iter().enumerate() {
        let mut s = ctx.hdc(i as u64, 2000, 32, vec![1], 100);
        s.activation = Activation::Tanh { gamma };
        s.start = Start::Filled;
        s.lookbacks = Lookbacks::Fixed(ks);
        push_sim(&mut t, row![gamma], &ctx.run(&s)?);
        specs.push(s);
    }
    Ok(Output { table: t, config: json!({ "experiments": specs }) })
}

fn p6b1(_: &Ctx) -> Result<Output> {
    let (n, d) = (2000, 32);
    let gammas = [8.0, 16.0, 64.0];
    let lengths = steps(5, 400, 5);
    let mut t = Table::new(&["gamma", "M", "s", "spread", "p_corr", "item_info"]);
    for g in gammas {
        empty_accuracy(tanh(g), g, n, d, &lengths, &mut t)?;
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "n_tokens": d, "gamma": gammas, "tracker_bins_per_unit": TANH_BINS_PER_UNIT }) })
}

fn p6b2(ctx: &Ctx) -> Result<Output> {
    let cases = [(8.0, vec![10, 20, 30, 40, 60]), (64.0, vec![50, 100, 150, 200, 300])];
    let mut t = sim_table(&["gamma"]);
    let mut specs = Vec::new();
    for (i, (gamma, ls)) in cases.into_iter().enumerate() {
        let mut s = ctx.hdc(i as u64, 2000, 32, ls, 200);
        s.activation = Activation::Tanh { gamma };
        push_sim(&mut t, row![gamma], &ctx.run(&s)?);
        specs.push(s);
    }
    Ok(Output { table: t, config: json!({ "experiments": specs }) })
}

const GAMMAS: [f64; 11] = [4.0, 8.0, 16.0, 32.0, 64.0, 96.0, 128.0, 192.0, 256.0, 384.0, 512.0];

fn gain_search(n: usize, d: usize) -> Result<CapacityResult> {
    let mut best: Option<CapacityResult> = None;
    let mut per_neuron = Vec::with_capacity(GAMMAS.len());
    for &g in &GAMMAS {
        let objective = Objective::Gain { length: None, half_bins: g as usize * TANH_BINS_PER_UNIT };
        let r = capacity_search(&objective, n, d, &[g], &q())?;
        per_neuron.push(r.i_per_neuron);
        if best.as_ref().is_none_or(|b| r.i_per_neuron > b.i_per_neuron) {
            best = Some(r);
        }
    }
    let mut r = best.expect("non-empty grid");
    r.best_index = GAMMAS.iter().position(|&g| g == r.best_param).unwrap();
    r.grid = GAMMAS.to_vec();
    r.per_neuron = per_neuron;
    Ok(r)
}

fn gain_config(n: usize, tokens: &[usize]) -> serde_json::Value {
    json!({ "n_dim": n, "tokens": tokens, "gamma": GAMMAS, "tracker_bins_per_unit": TANH_BINS_PER_UNIT })
}

fn info_vs_gamma(n: usize, d: usize) -> Result<Output> {
    let r = gain_search(n, d)?;
    let mut t = Table::new(&["gamma", "i_per_neuron", "best"]);
    for (i, (&g, &c)) in r.grid.iter().zip(&r.per_neuron).enumerate() {
        t.push(row![g, c, i == r.best_index]);
    }
    Ok(Output { table: t, config: gain_config(n, &[d]) })
}

fn p6c(_: &Ctx) -> Result<Output> {
    info_vs_gamma(2000, 32)
}

fn p6d(_: &Ctx) -> Result<Output> {
    info_vs_gamma(2000, 256)
}

fn p6e(_: &Ctx) -> Result<Output> {
    let n = 2000;
    let tokens = [8usize, 32, 256, 1024];
    let mut t = Table::new(&["D", "N", "gamma_opt", "i_per_neuron", "interior"]);
    for &d in &tokens {
        let r = gain_search(n, d)?;
        t.push(row![d, n, r.best_param, r.i_per_neuron, interior(&r)]);
    }
    Ok(Output { table: t, config: gain_config(n, &tokens) })
}

// ---- comparisons ----

fn p7a(_: &Ctx) -> Result<Output> {
    let d = 27;
    let ns = [100usize, 300, 1000, 3000];
    let mut t = Table::new(&["N", "network", "best_param", "i_per_neuron"]);
    for &n in &ns {
        let linear = capacity_search(&Objective::Length { v_ratio: None }, n, d, &steps(1, 2 * n, 1).into_iter().map(|m| m as f64).collect::<Vec<_>>(), &q())?;
        t.push(row![n, "linear", linear.best_param, linear.i_per_neuron]);
        let decay = best_lambda(n, d, 0.1)?;
        t.push(row![n, "decay", decay.best_param, decay.i_per_neuron]);
        let clip = capacity_search(&Objective::ClipBound { length: None }, n, d, &kappa_grid(30), &q())?;
        t.push(row![n, "clipped", clip.best_param, clip.i_per_neuron]);
    }
    Ok(Output { table: t, config: json!({ "n_tokens": d, "n_dim": ns }) })
}

fn p7b(_: &Ctx) -> Result<Output> {
    let mut t = Table::new(&["kappa", "uniform_variance", "tau_clipped", "lambda_matched", "tau_decay"]);
    for kappa in 1..=40u32 {
        let lambda = matched_contraction(kappa).ok();
        let tau_decay = lambda.map(|l| time_constant(TimeConstant::Lambda(l))).transpose()?;
        t.push(row![kappa, uniform_variance(kappa), time_constant(TimeConstant::Kappa(kappa)).ok(), lambda, tau_decay]);
    }
    Ok(Output { table: t, config: json!({ "kappa": [1, 40] }) })
}

fn p7c(_: &Ctx) -> Result<Output> {
    let (n, d) = (5000, 27);
    let kappas = [7u32, 15];
    let mut t = Table::new(&["kappa", "lambda", "K", "p_clipped", "p_decay"]);
    for kappa in kappas {
        let lambda = matched_contraction(kappa)?;
        let ks = steps(0, 1000, 10);
        let curve = filled_curve(TrackerMode::ExactInteger { kappa }, n, 1001)?;
        for &k in &ks {
            let decay = score_model(&SnrScenario::DecayFilled { n_dim: n, contraction: lambda, lookback: k })?;
            t.push(row![kappa, lambda, k, acc(tracked(&curve[k]), d), acc(decay, d)]);
        }
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "n_tokens": d, "kappa": kappas, "lookbacks": [0, 1000, 10] }) })
}

fn p7d(_: &Ctx) -> Result<Output> {
    let n = 1000;
    let tokens = [8usize, 32, 256, 1024, 4096];
    let grid = kappa_grid(40);
    let mut t = Table::new(&["D", "kappa_best", "i_per_neuron", "storage_bits_per_neuron", "bits_per_stored_bit", "interior"]);
    for &d in &tokens {
        let r = capacity_search(&Objective::ClipBound { length: None }, n, d, &grid, &q())?;
        let ratio: Vec<f64> =
            r.grid.iter().zip(&r.per_neuron).map(|(&k, &i)| Ok(i * n as f64 / storage_bits(n, k as u32)?)).collect::<Result<_>>()?;
        let best = (0..ratio.len()).fold(0, |b, i| if ratio[i] > ratio[b] { i } else { b });
        let kappa = r.grid[best];
        let edge = best == 0 || best + 1 == ratio.len();
        t.push(row![d, kappa, r.per_neuron[best], (2.0 * kappa + 1.0).log2(), ratio[best], !edge]);
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "tokens": tokens, "kappa": grid, "selection": "max bits per stored bit" }) })
}
