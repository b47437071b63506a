//! Linear networks without decay: accuracy by scheme, detection, noise,
//! information and capacity, approximations, the shift-register baseline and
//! single-item collisions.

use super::{acc, push_sim, sim_table, steps, Ctx, Output, Preset};
use crate::row;
use crate::table::Table;
use anyhow::Result;
use serde_json::json;
use superpos::harness::{run_dsr, DsrSpec, ExperimentSpec, Lookbacks};
use superpos::memory::NoiseModel;
use superpos::theory::{
    accuracy_approx, accuracy_plate, all_correct_probability, capacity_search, collision_accuracy, collision_info,
    invert_accuracy, item_info, required_snr_squared, score_model, AllCorrectConvention, Approximation,
    CollisionCount, Objective, Quadrature, ScoreModel, SnrRule, SnrScenario,
};
use superpos::{BindingKind, Scheme};

pub(super) fn presets() -> Vec<Preset> {
    vec![
        Preset { id: "2A", about: "HDC accuracy of the first item vs M, D=27, N in {100, 300, 1000}", run: p2a },
        Preset { id: "2B", about: "HDC accuracy vs M at N=2000 for D in {8, 27, 128, 1024}", run: p2b },
        Preset { id: "2C", about: "HRR (circular convolution) accuracy vs M, D=27", run: p2c },
        Preset { id: "2D", about: "FHRR with circular convolution, accuracy vs M, D=27", run: p2d },
        Preset { id: "2E", about: "FHRR with elementwise phasor binding, accuracy vs M, D=27", run: p2e },
        Preset { id: "2F", about: "random unitary binding, accuracy vs M, D=27", run: p2f },
        Preset { id: "2X-A", about: "detection: hits and correct rejections vs M for three thresholds", run: p2xa },
        Preset { id: "2X-B", about: "accuracy vs M for code sparsity 0, 0.5 and 0.9", run: p2xb },
        Preset { id: "2X-C", about: "accuracy vs M under readout, per-step and bit-flip noise", run: p2xc },
        Preset { id: "3A", about: "exact accuracy and its approximations vs SNR for D in {8, 27, 1024}", run: p3a },
        Preset { id: "3B", about: "bits per retrieved item vs SNR for several D", run: p3b },
        Preset { id: "3C", about: "total information per neuron vs M at N=1000", run: p3c },
        Preset { id: "3D", about: "simulated and predicted total information vs M, N=1000, D=27", run: p3d },
        Preset { id: "3E", about: "capacity (bits per neuron) and optimal M vs D at N=1000", run: p3e },
        Preset { id: "3F", about: "capacity and optimal M vs D up to 2^20 at N=100", run: p3f },
        Preset { id: "8A", about: "accuracy approximations vs SNR at D=8", run: p8a },
        Preset { id: "8B", about: "accuracy approximations vs SNR at D=1024", run: p8b },
        Preset { id: "8C", about: "SNR^2 required for error rate epsilon at D=8, exact and estimates", run: p8c },
        Preset { id: "8D", about: "SNR^2 required for error rate epsilon at D=1024, exact and estimates", run: p8d },
        Preset { id: "8E", about: "probability of retrieving all of M=20 items vs N, D=4096, two conventions", run: p8e },
        Preset { id: "9", about: "distributed shift register vs superposition under bit flips, over D", run: p9 },
        Preset { id: "10A", about: "single stored item: accuracy vs N from codeword collisions", run: p10a },
        Preset { id: "10B", about: "single stored item: information vs N from codeword collisions", run: p10b },
    ]
}

const LENGTHS: [usize; 8] = [5, 10, 20, 50, 100, 200, 300, 500];

fn by_scheme(ctx: &Ctx, scheme: Scheme, binding: BindingKind, ns: &[usize]) -> Result<Output> {
    let specs: Vec<ExperimentSpec> = ns
        .iter()
        .enumerate()
        .map(|(i, &n)| ctx.spec(i as u64, scheme, binding, n, 27, LENGTHS.to_vec(), 1000))
        .collect();
    let mut t = sim_table(&[]);
    for s in &specs {
        push_sim(&mut t, vec![], &ctx.run(s)?);
    }
    Ok(Output { table: t, config: json!({ "experiments": specs }) })
}

fn p2a(ctx: &Ctx) -> Result<Output> {
    by_scheme(ctx, Scheme::Hdc, BindingKind::Permutation, &[100, 300, 1000])
}

fn p2b(ctx: &Ctx) -> Result<Output> {
    let specs: Vec<ExperimentSpec> = [8usize, 27, 128, 1024]
        .iter()
        .enumerate()
        .map(|(i, &d)| ctx.hdc(i as u64, 2000, d, LENGTHS.to_vec(), 1000))
        .collect();
    let mut t = sim_table(&["D"]);
    for s in &specs {
        push_sim(&mut t, row![s.n_tokens], &ctx.run(s)?);
    }
    Ok(Output { table: t, config: json!({ "experiments": specs }) })
}

fn p2c(ctx: &Ctx) -> Result<Output> {
    by_scheme(ctx, Scheme::Hrr, BindingKind::Circulant, &[100, 300, 1000])
}

fn p2d(ctx: &Ctx) -> Result<Output> {
    by_scheme(ctx, Scheme::Fhrr, BindingKind::Circulant, &[100, 300, 1000])
}

fn p2e(ctx: &Ctx) -> Result<Output> {
    by_scheme(ctx, Scheme::Fhrr, BindingKind::PhasorDiagonal, &[100, 300, 1000])
}

fn p2f(ctx: &Ctx) -> Result<Output> {
    by_scheme(ctx, Scheme::RandomUnitary, BindingKind::RandomUnitary, &[100, 300])
}

fn p2xa(ctx: &Ctx) -> Result<Output> {
    let mut t = Table::new(&[
        "theta", "M", "K", "N", "p_theory", "p_empirical", "ci_lo", "ci_hi", "rej_theory", "rej_empirical",
    ]);
    let mut specs = Vec::new();
    for (i, theta) in [0.3, 0.5, 0.7].into_iter().enumerate() {
        let mut s = ctx.hdc(i as u64, 1000, 27, vec![10, 20, 50, 100, 200], 1000);
        s.input_sparsity = 0.5;
        s.threshold = Some(theta);
        for r in &ctx.run(&s)?.rows {
            t.push(row![theta, r.length, r.lookback, r.n_dim, r.theory, r.accuracy, r.ci_lo, r.ci_hi, r.rejection_theory, r.rejection]);
        }
        specs.push(s);
    }
    Ok(Output { table: t, config: json!({ "experiments": specs }) })
}

fn p2xb(ctx: &Ctx) -> Result<Output> {
    let mut t = sim_table(&["code_sparsity"]);
    let mut specs = Vec::new();
    for (i, sp) in [0.0, 0.5, 0.9].into_iter().enumerate() {
        let mut s = ctx.hdc(i as u64, 1000, 27, LENGTHS.to_vec(), 1000);
        s.code_sparsity = sp;
        push_sim(&mut t, row![sp], &ctx.run(&s)?);
        specs.push(s);
    }
    Ok(Output { table: t, config: json!({ "experiments": specs }) })
}

fn p2xc(ctx: &Ctx) -> Result<Output> {
    let mut t = sim_table(&["noise", "level"]);
    let mut specs = Vec::new();
    let models = [
        ("none", NoiseModel::None, 0.0),
        ("readout_gaussian", NoiseModel::ReadoutGaussian { sigma: 5.0 }, 5.0),
        ("per_step_gaussian", NoiseModel::PerStepGaussian { sigma: 1.0 }, 1.0),
        ("bit_flip", NoiseModel::BitFlip { p: 0.1 }, 0.1),
    ];
    for (i, (name, noise, level)) in models.into_iter().enumerate() {
        let mut s = ctx.hdc(i as u64, 1000, 27, LENGTHS.to_vec(), 1000);
        s.noise = noise;
        push_sim(&mut t, row![name, level], &ctx.run(&s)?);
        specs.push(s);
    }
    Ok(Output { table: t, config: json!({ "experiments": specs }) })
}

fn approximations(tokens: &[usize], s_max: f64, ds: f64) -> Output {
    let mut t = Table::new(&["D", "s", "p_exact", "p_fa", "p_fa_cr", "p_fa_cr_lee", "p_chang", "p_plate"]);
    let n = (s_max / ds).round() as usize;
    for &d in tokens {
        for i in 0..=n {
            let s = i as f64 * ds;
            t.push(row![
                d,
                s,
                acc(ScoreModel::equal_variance(s), d),
                accuracy_approx(s, d, Approximation::Fa),
                accuracy_approx(s, d, Approximation::FaCr),
                accuracy_approx(s, d, Approximation::FaCrLee),
                accuracy_approx(s, d, Approximation::Chang),
                accuracy_plate(s, d)
            ]);
        }
    }
    Output { table: t, config: json!({ "tokens": tokens, "s_max": s_max, "s_step": ds }) }
}

fn p3a(_: &Ctx) -> Result<Output> {
    Ok(approximations(&[8, 27, 1024], 10.0, 0.25))
}

fn p3b(_: &Ctx) -> Result<Output> {
    let tokens = [2usize, 8, 27, 256, 1024];
    let mut t = Table::new(&["D", "s", "p_corr", "item_info"]);
    for &d in &tokens {
        for i in 0..=40 {
            let s = i as f64 * 0.25;
            let p = acc(ScoreModel::equal_variance(s), d);
            t.push(row![d, s, p, item_info(p, d)]);
        }
    }
    Ok(Output { table: t, config: json!({ "tokens": tokens, "s": [0.0, 10.0, 0.25] }) })
}

fn p3c(_: &Ctx) -> Result<Output> {
    let n = 1000;
    let tokens = [8usize, 27, 256];
    let mut t = Table::new(&["D", "M", "p_corr", "item_info", "i_total", "i_per_neuron"]);
    for &d in &tokens {
        for m in steps(10, 2000, 10) {
            let p = acc(score_model(&SnrScenario::LinearLargeM { n_dim: n, length: m })?, d);
            let i = item_info(p, d);
            t.push(row![d, m, p, i, m as f64 * i, m as f64 * i / n as f64]);
        }
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "tokens": tokens, "lengths": [10, 2000, 10] }) })
}

fn p3d(ctx: &Ctx) -> Result<Output> {
    let (n, d) = (1000, 27);
    let s = ctx.hdc(0, n, d, vec![50, 100, 200, 300, 400, 600, 800], 1000);
    let mut t = Table::new(&["M", "N", "D", "p_theory", "p_empirical", "bits_theory", "bits_empirical"]);
    for r in &ctx.run(&s)?.rows {
        let m = r.length as f64;
        t.push(row![r.length, n, d, r.theory, r.accuracy, r.theory.map(|p| m * item_info(p, d)), m * item_info(r.accuracy, d)]);
    }
    Ok(Output { table: t, config: json!({ "experiment": s }) })
}

/// Lengths 1..100 by 1, to 1000 by 5, to 10000 by 50.
fn length_grid(max: usize) -> Vec<f64> {
    steps(1, 99, 1)
        .into_iter()
        .chain(steps(100, 995, 5))
        .chain(steps(1000, 10000, 50))
        .filter(|&m| m <= max)
        .map(|m| m as f64)
        .collect()
}

fn capacity_over_d(n: usize, tokens: &[usize], max_m: usize) -> Result<Output> {
    let grid = length_grid(max_m);
    let mut t = Table::new(&["D", "N", "M_opt", "p_corr", "i_per_neuron"]);
    for &d in tokens {
        let r = capacity_search(&Objective::Length { v_ratio: None }, n, d, &grid, &Quadrature::default())?;
        t.push(row![d, n, r.best_param, r.p_corr[0], r.i_per_neuron]);
    }
    Ok(Output { table: t, config: json!({ "n_dim": n, "tokens": tokens, "max_length": max_m }) })
}

fn p3e(_: &Ctx) -> Result<Output> {
    capacity_over_d(1000, &[2, 4, 8, 16, 27, 32, 64, 128, 256, 512, 1024, 4096], 10000)
}

fn p3f(_: &Ctx) -> Result<Output> {
    let tokens: Vec<usize> = (1..=20).map(|k| 1usize << k).collect();
    capacity_over_d(100, &tokens, 1000)
}

fn p8a(_: &Ctx) -> Result<Output> {
    Ok(approximations(&[8], 8.0, 0.1))
}

fn p8b(_: &Ctx) -> Result<Output> {
    Ok(approximations(&[1024], 12.0, 0.1))
}

fn required(d: usize) -> Result<Output> {
    let mut t = Table::new(&["D", "epsilon", "s2_exact", "s2_fa_cr_lee", "s2_chang", "s2_plate"]);
    let q = Quadrature::default();
    let eps: Vec<f64> = (0..=25).map(|i| 10f64.powf(-1.0 - 0.2 * i as f64)).collect();
    for &e in &eps {
        t.push(row![
            d,
            e,
            invert_accuracy(d, e, &q)?,
            required_snr_squared(d, e, SnrRule::FaCrLee)?,
            required_snr_squared(d, e, SnrRule::Chang)?,
            required_snr_squared(d, e, SnrRule::Plate)?
        ]);
    }
    Ok(Output { table: t, config: json!({ "n_tokens": d, "epsilon": eps }) })
}

fn p8c(_: &Ctx) -> Result<Output> {
    required(8)
}

fn p8d(_: &Ctx) -> Result<Output> {
    required(1024)
}

fn p8e(_: &Ctx) -> Result<Output> {
    let (d, m) = (4096usize, 20usize);
    let q = Quadrature::default();
    let mut t = Table::new(&["N", "s", "p_all_threshold", "p_all_product"]);
    for n in steps(250, 6000, 250) {
        let model = score_model(&SnrScenario::LinearLargeM { n_dim: n, length: m })?;
        let plate = all_correct_probability(model, d, m, Some(model.snr / 2.0), AllCorrectConvention::Plate, &q)?;
        let ours = all_correct_probability(model, d, m, None, AllCorrectConvention::Ours, &q)?;
        t.push(row![n, model.snr, plate, ours]);
    }
    Ok(Output { table: t, config: json!({ "n_tokens": d, "items": m, "threshold": "s/2", "n_dim": [250, 6000, 250] }) })
}

fn p9(ctx: &Ctx) -> Result<Output> {
    let (n, m, p_flip) = (400usize, 20usize, 0.05);
    let mut t = Table::new(&["D", "method", "M", "p_theory", "p_empirical", "ci_lo", "ci_hi", "bits_theory", "bits_empirical"]);
    let mut experiments = Vec::new();
    for (i, d) in [4usize, 8, 16, 32, 64, 256, 1024].into_iter().enumerate() {
        let dsr = DsrSpec {
            label: "dsr".into(),
            n_dim: n,
            n_tokens: d,
            length: m,
            lookbacks: Lookbacks::All,
            p_flip,
            trials: ctx.trials(500),
            seed: superpos::seed::derive(ctx.seed, 2 * i as u64),
        };
        let mut sup = ctx.hdc(2 * i as u64 + 1, n, d, vec![m], 500);
        sup.label = "superposition".into();
        sup.noise = NoiseModel::BitFlip { p: p_flip };
        sup.lookbacks = Lookbacks::All;
        for (name, r) in [("dsr", run_dsr(&dsr)?), ("superposition", ctx.run(&sup)?)] {
            let (hits, samples) = r.rows.iter().fold((0, 0), |(c, s), row| (c + row.hit_correct, s + row.hit_samples));
            let (lo, hi) = superpos::harness::wilson(hits, samples, superpos::harness::Z95);
            let theory = r.rows.iter().map(|row| row.theory).sum::<Option<f64>>().map(|p| p / r.rows.len() as f64);
            let (bits_emp, bits_theory) = r.total_bits();
            t.push(row![d, name, m, theory, hits as f64 / samples as f64, lo, hi, bits_theory, bits_emp]);
        }
        experiments.push(json!({ "dsr": dsr, "superposition": sup }));
    }
    Ok(Output { table: t, config: json!({ "experiments": experiments }) })
}

const COLLISION_TOKENS: [usize; 4] = [16, 256, 1 << 16, 1 << 20];

fn p10a(_: &Ctx) -> Result<Output> {
    let mut t = Table::new(&["D", "N", "p_corr"]);
    for d in COLLISION_TOKENS {
        for n in 1..=40 {
            t.push(row![d, n, collision_accuracy(n, d, CollisionCount::Distractors)?]);
        }
    }
    Ok(Output { table: t, config: json!({ "tokens": COLLISION_TOKENS, "n_dim": [1, 40], "colliders": "distractors" }) })
}

fn p10b(_: &Ctx) -> Result<Output> {
    let mut t = Table::new(&["D", "N", "bits", "bits_per_neuron", "uniform_error_bits"]);
    for d in COLLISION_TOKENS {
        for n in 1..=40 {
            let c = collision_info(n, d, CollisionCount::Distractors)?;
            let p = collision_accuracy(n, d, CollisionCount::Distractors)?;
            t.push(row![d, n, c.bits, c.bits_per_neuron, item_info(p, d)]);
        }
    }
    Ok(Output { table: t, config: json!({ "tokens": COLLISION_TOKENS, "n_dim": [1, 40], "colliders": "distractors" }) })
}
