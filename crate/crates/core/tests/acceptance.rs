//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! always exits successfully, so a red criterion is reported rather than
//! aborting `cargo test`. Run alone with `cargo test --test acceptance`.

use std::collections::BTreeMap;
use std::time::Instant;
use superpos::codebook::{BindingKind, Scheme};
use superpos::dsr::DsrCode;
use superpos::harness::*;
use superpos::theory::*;
use superpos::{Activation, NoiseModel};

const SEED: u64 = 2024;

struct Suite {
    lines: Vec<String>,
    passed: usize,
    csv: BTreeMap<String, String>,
}

impl Suite {
    fn report(&mut self, id: u32, title: &str, pass: bool, detail: String) {
        let line = format!("criterion {id:>2} {} {title}: {detail}", if pass { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push(line);
        self.passed += pass as usize;
    }

    /// Run a spec and keep its CSV for the determinism check.
    fn run(&mut self, name: &str, spec: &ExperimentSpec) -> SweepResult {
        let r = run_trials(spec).expect("acceptance spec runs");
        self.csv.insert(name.to_string(), to_csv(&r.rows).unwrap());
        r
    }
}

fn z_of(row: &SweepRow, theory: f64) -> f64 {
    score_z(row.hit_correct, row.hit_samples, theory)
}

fn model_of(r: &NonlinearSnr) -> ScoreModel {
    ScoreModel { snr: r.snr, spread: r.spread }
}

fn spec(scheme: Scheme, binding: BindingKind, n: usize, d: usize, lengths: Vec<usize>, trials: usize) -> ExperimentSpec {
    let mut s = ExperimentSpec::new(scheme, binding, n, d, lengths, trials);
    s.seed = SEED;
    s
}

fn scheme_universality(suite: &mut Suite) {
    let (n, d) = (1000, 27);
    let lengths: Vec<usize> = (1..=10).map(|i| 50 * i).collect();
    let variants = [
        ("hdc", Scheme::Hdc, BindingKind::Permutation),
        ("hrr", Scheme::Hrr, BindingKind::Circulant),
        ("fhrr-multiply", Scheme::Fhrr, BindingKind::PhasorDiagonal),
        ("fhrr-convolve", Scheme::Fhrr, BindingKind::Circulant),
        ("random-unitary", Scheme::RandomUnitary, BindingKind::RandomUnitary),
    ];
    let (mut ok, mut total) = (0, 0);
    let mut per = Vec::new();
    for (name, scheme, binding) in variants {
        let v = CodeMoments::new(scheme, n, 0.0).unwrap().v_ratio();
        let r = suite.run(&format!("1-{name}"), &spec(scheme, binding, n, d, lengths.clone(), 5000));
        let mut good = 0;
        let mut worst: f64 = 0.0;
        for row in &r.rows {
            let s = snr(&SnrScenario::LinearExact { n_dim: n, length: row.length, v_ratio: v }).unwrap();
            let z = z_of(row, accuracy_numeric(s, d, None));
            good += (z.abs() <= 3.0) as usize;
            if z.abs() > worst.abs() {
                worst = z;
            }
        }
        ok += good;
        total += r.rows.len();
        per.push(format!("{name} {good}/{} (worst z {worst:+.2})", r.rows.len()));
    }
    let frac = ok as f64 / total as f64;
    suite.report(1, "scheme universality", frac >= 0.95, format!("{ok}/{total} points within 3σ; {}", per.join(", ")));
}

fn chance_floor(suite: &mut Suite) {
    let floor = [2usize, 8, 27, 256].iter().map(|&d| (accuracy_numeric(0.0, d, None) - 1.0 / d as f64).abs()).fold(0.0, f64::max);
    let d2 = (0..=800)
        .map(|i| {
            let s = i as f64 * 0.01;
            (accuracy_numeric(s, 2, None) - accuracy_closed_d2(s)).abs()
        })
        .fold(0.0, f64::max);
    suite.report(2, "chance floor and D=2 closed form", floor <= 1e-6 && d2 <= 1e-6, format!("max chance error {floor:.1e}, max D=2 error {d2:.1e}"));
}

fn high_fidelity(suite: &mut Suite) {
    let q = Quadrature::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for d in [8usize, 27, 1024] {
        for eps in [1e-2, 1e-3] {
            let exact = invert_accuracy(d, eps, &q).unwrap();
            let chang = required_snr_squared(d, eps, SnrRule::Chang).unwrap();
            let lee = required_snr_squared(d, eps, SnrRule::FaCrLee).unwrap();
            let rel = (chang - exact) / exact;
            let ok = rel.abs() <= 0.05 && lee > exact;
            pass &= ok;
            parts.push(format!("D={d} ε={eps:.0e}: s²={exact:.2} Chang {:+.1}% LEE {:+.1}%{}", 100.0 * rel, 100.0 * (lee - exact) / exact, if ok { "" } else { " ✗" }));
        }
    }
    suite.report(3, "high-fidelity approximations", pass, parts.join("; "));
}

fn channel_capacity(suite: &mut Suite) {
    let q = Quadrature::default();
    let grid: Vec<f64> = (1..=2000).map(|m| m as f64).collect();
    let obj = Objective::Length { v_ratio: None };
    let a = capacity_search(&obj, 1000, 27, &grid, &q).unwrap();
    let b = capacity_search(&obj, 1000, 10_000, &grid, &q).unwrap();
    let pass = (0.35..=0.45).contains(&a.i_per_neuron) && b.i_per_neuron > 0.5;
    suite.report(
        4,
        "channel capacity",
        pass,
        format!(
            "D=27 max {:.3} bits/neuron at M={}; D=10⁴ max {:.3} bits/neuron at M={}",
            a.i_per_neuron, a.best_param, b.i_per_neuron, b.best_param
        ),
    );
}

fn noise_models(suite: &mut Suite) {
    let (n, d) = (2000, 27);
    let lengths = [20usize, 50, 100, 200];
    let (mut ok, mut total) = (0, 0);
    let mut worst = (0.0f64, String::new());
    let mut check = |suite: &mut Suite, name: String, noise: NoiseModel, ls: Vec<usize>, scenario: &dyn Fn(usize) -> SnrScenario| {
        let mut s = spec(Scheme::Hdc, BindingKind::Permutation, n, d, ls, 5000);
        s.noise = noise;
        let r = suite.run(&format!("5-{name}"), &s);
        for row in &r.rows {
            let z = z_of(row, accuracy_numeric(snr(&scenario(row.length)).unwrap(), d, None));
            ok += (z.abs() <= 3.0) as usize;
            total += 1;
            if z.abs() > worst.0.abs() {
                worst = (z, format!("{name} M={}", row.length));
            }
        }
    };
    for p in [0.05, 0.1] {
        check(suite, format!("flip-{p}"), NoiseModel::BitFlip { p }, lengths.to_vec(), &|m| SnrScenario::BitFlip { n_dim: n, length: m, p });
    }
    check(suite, "readout-1".into(), NoiseModel::ReadoutGaussian { sigma: 1.0 }, lengths.to_vec(), &|m| SnrScenario::ReadoutNoise { n_dim: n, length: m, sigma: 1.0 });
    check(suite, "step-1".into(), NoiseModel::PerStepGaussian { sigma: 1.0 }, lengths.to_vec(), &|m| SnrScenario::PerStepNoise { n_dim: n, length: m, sigma: 1.0 });
    for m in lengths {
        let sigma = (m as f64).sqrt();
        check(suite, format!("readout-sqrtM-{m}"), NoiseModel::ReadoutGaussian { sigma }, vec![m], &|m| SnrScenario::ReadoutNoise { n_dim: n, length: m, sigma });
        check(suite, format!("step-sqrtM-{m}"), NoiseModel::PerStepGaussian { sigma }, vec![m], &|m| SnrScenario::PerStepNoise { n_dim: n, length: m, sigma });
    }
    suite.report(5, "noise models", ok == total, format!("{ok}/{total} points within 3σ; worst z {:+.2} ({})", worst.0, worst.1));
}

fn sparsity_flatline(suite: &mut Suite) {
    let mut rows = Vec::new();
    for p in [0.0, 0.9, 1.0] {
        let mut s = spec(Scheme::Hdc, BindingKind::Permutation, 2000, 27, vec![100], 5000);
        s.code_sparsity = p;
        rows.push(suite.run(&format!("6-sparsity-{p}"), &s).rows.remove(0));
    }
    let (z, pval) = two_proportion(rows[0].hit_correct, rows[0].hit_samples, rows[1].hit_correct, rows[1].hit_samples);
    let chance = 1.0 / 27.0;
    let zc = z_of(&rows[2], chance);
    suite.report(
        6,
        "sparsity flatline",
        pval > 0.01 && zc.abs() <= 3.0,
        format!(
            "p_sf 0 vs 0.9: {:.4} vs {:.4}, z {z:+.2}, p {pval:.3}; p_sf 1: {:.4} (z {zc:+.2} against 1/27)",
            rows[0].accuracy, rows[1].accuracy, rows[2].accuracy
        ),
    );
}

fn decay_networks(suite: &mut Suite) {
    let (n, d) = (10_000, 32);
    let cases: [(f64, Vec<usize>); 3] = [
        (0.99, vec![0, 100, 200, 300, 400]),
        (0.996, vec![0, 200, 300, 500, 800]),
        (0.999, vec![0, 300, 1000, 2000, 3000]),
    ];
    let (mut ok, mut total) = (0, 0);
    let mut worst = (0.0f64, String::new());
    for (lambda, ks) in cases {
        let mut s = spec(Scheme::Hdc, BindingKind::Permutation, n, d, vec![1], 500);
        s.contraction = lambda;
        s.start = Start::Filled;
        s.lookbacks = Lookbacks::Fixed(ks);
        let r = suite.run(&format!("7-decay-{lambda}"), &s);
        for row in &r.rows {
            let m = score_model(&SnrScenario::DecayFilled { n_dim: n, contraction: lambda, lookback: row.lookback }).unwrap();
            let z = z_of(row, accuracy_model(m, d, None, &Quadrature::default()));
            ok += (z.abs() <= 3.0) as usize;
            total += 1;
            if z.abs() > worst.0.abs() {
                worst = (z, format!("λ={lambda} K={}", row.lookback));
            }
        }
    }
    let grid: Vec<f64> = (0..40).map(|i| 1.0 - 0.2 * 0.85f64.powi(i)).collect();
    let cap = capacity_search(&Objective::Contraction { length: None }, 1000, 64, &grid, &Quadrature::default()).unwrap();
    let interior = cap.best_index > 0 && cap.best_index + 1 < grid.len();
    suite.report(
        7,
        "decay networks",
        ok == total && interior,
        format!(
            "{ok}/{total} points within 3σ (worst z {:+.2} at {}); optimal λ {:.4} at grid index {}/{}",
            worst.0,
            worst.1,
            cap.best_param,
            cap.best_index,
            grid.len() - 1
        ),
    );
}

/// Exact clipped-component distribution by enumerating all input signs.
fn enumerate_clipped(kappa: i64, m: usize, target: usize) -> Vec<f64> {
    let mut p = vec![0.0; (2 * kappa + 1) as usize];
    for bits in 0..1u32 << (m - 1) {
        let (mut x, mut b) = (0i64, 0);
        for j in 0..m {
            let s = if j == target {
                1
            } else {
                b += 1;
                if bits >> (b - 1) & 1 == 1 { 1 } else { -1 }
            };
            x = (x + s).clamp(-kappa, kappa);
        }
        p[(x + kappa) as usize] += 1.0 / (1u64 << (m - 1)) as f64;
    }
    p
}

fn clipped_tracker(suite: &mut Suite) {
    let (n, d) = (5000, 27);
    let q = Quadrature::default();
    let cases: [(u32, Vec<usize>, Vec<usize>); 3] = [
        (3, vec![10, 20, 30, 40, 50], vec![0, 10, 20, 30, 40]),
        (7, vec![40, 80, 120, 160, 200], vec![40, 60, 80, 120, 160]),
        (15, vec![160, 240, 320, 400, 640], vec![80, 160, 240, 320, 640]),
    ];
    let (mut ok, mut total) = (0, 0);
    let mut worst = (0.0f64, String::new());
    for (kappa, lengths, ks) in cases {
        let mode = TrackerMode::ExactInteger { kappa };
        let mut s = spec(Scheme::Hdc, BindingKind::Permutation, n, d, lengths, 2000);
        s.activation = Activation::ClippedLinear { kappa };
        let r = suite.run(&format!("8-clip-{kappa}-empty"), &s);
        let mut f = s.clone();
        f.start = Start::Filled;
        f.lengths = vec![1];
        f.lookbacks = Lookbacks::Fixed(ks.clone());
        let rf = suite.run(&format!("8-clip-{kappa}-filled"), &f);
        let curve = filled_curve(mode, n, ks.iter().max().unwrap() + 1).unwrap();
        let empty = r.rows.iter().map(|row| {
            let t = nonlinear_snr(&NonlinearSpec { mode, n_dim: n, length: Some(row.length), position: row.length }).unwrap();
            (row, format!("empty M={}", row.length), model_of(&t))
        });
        let filled = rf.rows.iter().map(|row| (row, format!("filled K={}", row.lookback), model_of(&curve[row.lookback])));
        for (row, label, model) in empty.chain(filled) {
            let z = z_of(row, accuracy_model(model, d, None, &q));
            ok += (z.abs() <= 3.0) as usize;
            total += 1;
            if z.abs() > worst.0.abs() {
                worst = (z, format!("κ={kappa} {label}"));
            }
        }
    }
    let mut exact = true;
    for m in 1..=6usize {
        for pos in 1..=m {
            let mut t = tracker_init(TrackerMode::ExactInteger { kappa: 1 }, Start::Empty).unwrap();
            t.diffuse(m - pos);
            t.step(StepKind::Skew);
            t.diffuse(pos - 1);
            exact &= t.p.iter().zip(enumerate_clipped(1, m, m - pos)).all(|(a, b)| (a - b).abs() < 1e-15);
        }
    }
    suite.report(
        8,
        "clipped network tracker",
        ok == total && exact,
        format!(
            "{ok}/{total} points within 3σ (worst z {:+.2} at {}); κ=1 tracker {} enumeration for M ≤ 6",
            worst.0,
            worst.1,
            if exact { "equals" } else { "differs from" }
        ),
    );
}

fn tanh_network(suite: &mut Suite) {
    let (n, d) = (2000, 32);
    let q = Quadrature::default();
    let cases: [(f64, Vec<usize>, Vec<usize>, usize); 2] = [
        (8.0, vec![10, 20, 30, 40, 60], vec![0, 10, 20, 30, 50], 200),
        (64.0, vec![50, 100, 150, 200, 300], vec![10, 30, 100, 200, 300], 100),
    ];
    let (mut ok, mut total) = (0, 0);
    let mut worst = (0.0f64, String::new());
    for (gamma, lengths, ks, filled_trials) in cases {
        let mode = TrackerMode::DiscretizedSquash { gamma, half_bins: 400 };
        let mut s = spec(Scheme::Hdc, BindingKind::Permutation, n, d, lengths, 200);
        s.activation = Activation::Tanh { gamma };
        let r = suite.run(&format!("9-tanh-{gamma}-empty"), &s);
        let mut f = s.clone();
        f.start = Start::Filled;
        f.lengths = vec![1];
        f.lookbacks = Lookbacks::Fixed(ks.clone());
        f.trials = filled_trials;
        let rf = suite.run(&format!("9-tanh-{gamma}-filled"), &f);
        let curve = filled_curve(mode, n, ks.iter().max().unwrap() + 1).unwrap();
        let empty = r.rows.iter().map(|row| {
            let t = nonlinear_snr(&NonlinearSpec { mode, n_dim: n, length: Some(row.length), position: row.length }).unwrap();
            (row, format!("empty M={}", row.length), model_of(&t))
        });
        let filled = rf.rows.iter().map(|row| (row, format!("filled K={}", row.lookback), model_of(&curve[row.lookback])));
        for (row, label, model) in empty.chain(filled) {
            let z = z_of(row, accuracy_model(model, d, None, &q));
            ok += (z.abs() <= 4.0) as usize;
            total += 1;
            if z.abs() > worst.0.abs() {
                worst = (z, format!("γ={gamma} {label}"));
            }
        }
    }
    suite.report(9, "tanh network", ok == total, format!("{ok}/{total} points within 4σ (worst z {:+.2} at {})", worst.0, worst.1));
}

fn time_constants(suite: &mut Suite) {
    let (n, d) = (5000, 27);
    let q = Quadrature::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for kappa in [7u32, 15] {
        let w = 2.0 * kappa as f64 + 1.0;
        let lambda = (1.0 - 12.0 / (w * w - 1.0)).sqrt();
        let tau = time_constant(TimeConstant::Kappa(kappa)).unwrap();
        let horizon = (2.0 * tau).floor() as usize;
        let curve = filled_curve(TrackerMode::ExactInteger { kappa }, n, horizon + 1).unwrap();
        let (mut gap, mut at) = (0.0f64, 0);
        for k in 0..=horizon {
            let decay = score_model(&SnrScenario::DecayFilled { n_dim: n, contraction: lambda, lookback: k }).unwrap();
            let g = (accuracy_model(decay, d, None, &q) - accuracy_model(model_of(&curve[k]), d, None, &q)).abs();
            if g > gap {
                gap = g;
                at = k;
            }
        }
        pass &= gap <= 0.05;
        parts.push(format!("κ={kappa} (τ={tau:.1}, λ={lambda:.5}): max gap {gap:.4} at K={at}"));
    }
    suite.report(10, "time constants", pass, parts.join("; "));
}

fn bit_per_bit(suite: &mut Suite) {
    let grid: Vec<f64> = (1..=40).map(|k| k as f64).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for d in [256usize, 1024] {
        let r = capacity_search(&Objective::ClipBound { length: None }, 1000, d, &grid, &Quadrature::default()).unwrap();
        let ratio: Vec<f64> = grid.iter().zip(&r.per_neuron).map(|(&k, &i)| i / (2.0 * k + 1.0).log2()).collect();
        let best = (0..ratio.len()).fold(0, |b, i| if ratio[i] > ratio[b] { i } else { b });
        let bits = (2.0 * grid[best] + 1.0).log2();
        pass &= (4.0..=6.0).contains(&bits);
        parts.push(format!("D={d}: peak ratio {:.4} at κ={} (log₂(2κ+1) = {bits:.2})", ratio[best], grid[best]));
    }
    suite.report(11, "bit-per-bit optimum", pass, parts.join("; "));
}

fn single_item_and_dsr(suite: &mut Suite) {
    // exhaustive enumeration of all distractor codebooks
    let mut exact_ok = true;
    for (n, d) in [(2usize, 8usize), (3, 8), (4, 5), (6, 3), (8, 2), (8, 3)] {
        let words = 1usize << n;
        let total = words.pow((d - 1) as u32);
        let mut acc = 0.0;
        for mut code in 0..total {
            let mut same = 0;
            for _ in 0..d - 1 {
                same += (code % words == 0) as usize;
                code /= words;
            }
            acc += 1.0 / (same + 1) as f64;
        }
        let theory = collision_accuracy(n, d, CollisionCount::Distractors).unwrap();
        exact_ok &= (acc / total as f64 - theory).abs() < 1e-12;
    }
    // simulated single-item retrieval through the full pipeline
    let (mut mc_ok, mut mc_total) = (0, 0);
    for n in [4usize, 6, 8] {
        for d in [16usize, 64] {
            let s = spec(Scheme::Hdc, BindingKind::Permutation, n, d, vec![1], 4000);
            let row = &suite.run(&format!("12-collision-{n}-{d}"), &s).rows[0];
            let theory = collision_accuracy(n, d, CollisionCount::Distractors).unwrap();
            mc_ok += (z_of(row, theory).abs() <= 3.0) as usize;
            mc_total += 1;
        }
    }
    // DSR without noise stores min(M log₂D, N) bits
    let (n, d) = (400, 16);
    let code = DsrCode::new(n, d).unwrap();
    let mut dsr_ok = true;
    let mut dsr_bits = Vec::new();
    for m in [50usize, 100, 150] {
        let r = run_dsr(&DsrSpec {
            label: String::new(),
            n_dim: n,
            n_tokens: d,
            length: m,
            lookbacks: Lookbacks::All,
            p_flip: 0.0,
            trials: 200,
            seed: SEED,
        })
        .unwrap();
        let bits = r.total_bits().0;
        dsr_ok &= bits == (m as f64 * (d as f64).log2()).min(n as f64) && bits == superpos::dsr::dsr_capacity_bits(&code, m);
        dsr_bits.push(format!("M={m}: {bits}"));
    }
    // noisy comparison at p_f = 0.05
    let m = 20;
    let dsr = run_dsr(&DsrSpec {
        label: String::new(),
        n_dim: n,
        n_tokens: d,
        length: m,
        lookbacks: Lookbacks::All,
        p_flip: 0.05,
        trials: 2000,
        seed: SEED,
    })
    .unwrap();
    suite.csv.insert("12-dsr".into(), to_csv(&dsr.rows).unwrap());
    let mut s = spec(Scheme::Hdc, BindingKind::Permutation, n, d, vec![m], 2000);
    s.noise = NoiseModel::BitFlip { p: 0.05 };
    s.lookbacks = Lookbacks::All;
    let sup = suite.run("12-superposition", &s);
    let sum = |r: &SweepResult| r.rows.iter().fold((0, 0), |(c, t), row| (c + row.hit_correct, t + row.hit_samples));
    let (sc, st) = sum(&sup);
    let (dc, dt) = sum(&dsr);
    let (z, pval) = two_proportion(sc, st, dc, dt);
    let beats = z > 0.0 && pval < 0.01;
    suite.report(
        12,
        "single item and DSR",
        exact_ok && mc_ok == mc_total && dsr_ok && beats,
        format!(
            "collision enumeration {}; simulated {mc_ok}/{mc_total} within 3 SE; DSR bits {}; at p_f=0.05 superposition {:.4} vs DSR {:.4} (z {z:+.1})",
            if exact_ok { "exact" } else { "mismatch" },
            dsr_bits.join(", "),
            sc as f64 / st as f64,
            dc as f64 / dt as f64
        ),
    );
}

fn determinism(suite: &mut Suite) {
    let mut again = Suite { lines: Vec::new(), passed: 0, csv: BTreeMap::new() };
    let lengths: Vec<usize> = (1..=10).map(|i| 50 * i).collect();
    again.run("1-hdc", &spec(Scheme::Hdc, BindingKind::Permutation, 1000, 27, lengths, 5000));
    for p in [0.0, 0.9, 1.0] {
        let mut s = spec(Scheme::Hdc, BindingKind::Permutation, 2000, 27, vec![100], 5000);
        s.code_sparsity = p;
        again.run(&format!("6-sparsity-{p}"), &s);
    }
    let mut s = spec(Scheme::Hdc, BindingKind::Permutation, 5000, 27, vec![1], 2000);
    s.activation = Activation::ClippedLinear { kappa: 7 };
    s.start = Start::Filled;
    s.lookbacks = Lookbacks::Fixed(vec![40, 60, 80, 120, 160]);
    again.run("8-clip-7-filled", &s);
    let mut s = spec(Scheme::Hdc, BindingKind::Permutation, 400, 16, vec![20], 2000);
    s.noise = NoiseModel::BitFlip { p: 0.05 };
    s.lookbacks = Lookbacks::All;
    again.run("12-superposition", &s);
    let same = again.csv.iter().filter(|(k, v)| suite.csv.get(*k) == Some(v)).count();
    suite.report(13, "determinism", same == again.csv.len(), format!("{same}/{} repeated runs byte-identical", again.csv.len()));
}

fn main() {
    // `cargo test -- --list` and filtered runs should not start the suite
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    if let Some(filter) = args.iter().find(|a| !a.starts_with('-')) {
        if !"acceptance".contains(filter.as_str()) {
            return;
        }
    }
    let mut suite = Suite { lines: Vec::new(), passed: 0, csv: BTreeMap::new() };
    let criteria: [fn(&mut Suite); 13] = [
        scheme_universality,
        chance_floor,
        high_fidelity,
        channel_capacity,
        noise_models,
        sparsity_flatline,
        decay_networks,
        clipped_tracker,
        tanh_network,
        time_constants,
        bit_per_bit,
        single_item_and_dsr,
        determinism,
    ];
    let start = Instant::now();
    for c in criteria {
        let t = Instant::now();
        c(&mut suite);
        eprintln!("  ({:.1}s)", t.elapsed().as_secs_f64());
    }
    println!("acceptance: {}/{} criteria passed in {:.0}s", suite.passed, suite.lines.len(), start.elapsed().as_secs_f64());
}
