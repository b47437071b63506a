use proptest::prelude::*;
use superpos::theory::collision::collision_accuracy_closed;
use superpos::theory::*;

fn q() -> Quadrature {
    Quadrature::default()
}

#[test]
fn accuracy_is_monotone() {
    for d in [2usize, 8, 27, 1024] {
        let mut prev = 0.0;
        for i in 0..=80 {
            let p = accuracy_numeric(i as f64 * 0.1, d, None);
            assert!(p >= prev - 1e-12, "d={d} s={}", i as f64 * 0.1);
            prev = p;
        }
    }
    for s in [0.5, 2.0, 4.0] {
        let mut prev = 1.0;
        for d in [2usize, 4, 16, 64, 256, 1024] {
            let p = accuracy_numeric(s, d, None);
            assert!(p <= prev + 1e-12);
            prev = p;
        }
    }
}

#[test]
fn detection_never_beats_classification() {
    for s in [0.5, 2.0, 3.5, 6.0] {
        let c = accuracy_numeric(s, 27, None);
        let mut prev = c;
        for theta in [-3.0, 0.0, 1.0, 2.5, 5.0] {
            let p = accuracy_numeric(s, 27, Some(theta));
            assert!(p <= c + 1e-12);
            assert!(p <= prev + 1e-12);
            prev = p;
        }
        assert!((accuracy_numeric(s, 27, Some(-20.0)) - c).abs() < 1e-9);
    }
}

#[test]
fn approximation_ordering() {
    for d in [2usize, 27, 1024] {
        for i in 0..60 {
            let s = i as f64 * 0.2;
            let fa = accuracy_approx(s, d, Approximation::Fa);
            let cr = accuracy_approx(s, d, Approximation::FaCr);
            let lee = accuracy_approx(s, d, Approximation::FaCrLee);
            assert!(cr <= fa + 1e-12, "d={d} s={s}");
            assert!(lee <= cr + 1e-12, "d={d} s={s}");
            assert!((0.0..=1.0).contains(&accuracy_approx(s, d, Approximation::Chang)));
        }
    }
    // all approximations converge to the integral at high SNR
    let exact = accuracy_numeric(9.0, 27, None);
    for m in [Approximation::Fa, Approximation::FaCr, Approximation::FaCrLee, Approximation::Chang] {
        assert!((accuracy_approx(9.0, 27, m) - exact).abs() < 1e-3, "{m:?}");
    }
}

#[test]
fn linear_exact_limits() {
    let m1 = snr(&SnrScenario::LinearExact { n_dim: 100, length: 1, v_ratio: 0.0 }).unwrap();
    assert!(m1.is_infinite());
    let big = snr(&SnrScenario::LinearExact { n_dim: 1000, length: 100_000, v_ratio: 2.0 }).unwrap();
    let large = snr(&SnrScenario::LinearLargeM { n_dim: 1000, length: 100_000 }).unwrap();
    assert!((big / large - 1.0).abs() < 1e-5);
    let hdc = snr(&SnrScenario::LinearExact { n_dim: 1000, length: 100, v_ratio: 0.0 }).unwrap();
    assert!((hdc - (1000.0f64 / 99.0).sqrt()).abs() < 1e-12);
    assert!(snr(&SnrScenario::LinearLargeM { n_dim: 10, length: 0 }).is_err());
    let model = score_model(&SnrScenario::LinearExact { n_dim: 1000, length: 1, v_ratio: 0.0 }).unwrap();
    assert_eq!(model.spread, 0.0);
    assert_eq!(accuracy_model(model, 27, None, &q()), 1.0);
}

#[test]
fn decay_reduces_to_linear() {
    let a = snr(&SnrScenario::DecayFinite { n_dim: 500, length: 40, contraction: 1.0, lookback: 7 }).unwrap();
    let b = snr(&SnrScenario::LinearLargeM { n_dim: 500, length: 40 }).unwrap();
    assert!((a - b).abs() < 1e-12);
    let far = snr(&SnrScenario::DecayFinite { n_dim: 500, length: 100_000, contraction: 0.9, lookback: 3 }).unwrap();
    let filled = snr(&SnrScenario::DecayFilled { n_dim: 500, contraction: 0.9, lookback: 3 }).unwrap();
    assert!((far - filled).abs() < 1e-9);
}

#[test]
fn time_constants_agree() {
    let v = 40.0;
    let a = time_constant(TimeConstant::VarianceBound(v)).unwrap();
    let b = time_constant(TimeConstant::Lambda((1.0f64 - 1.0 / v).sqrt())).unwrap();
    assert_eq!(a, b);
    for kappa in [20u32, 50, 200] {
        let tk = time_constant(TimeConstant::Kappa(kappa)).unwrap();
        let tl = time_constant(TimeConstant::Lambda(matched_contraction(kappa).unwrap())).unwrap();
        assert!((tk / tl - 1.0).abs() < 5.0 / kappa as f64, "κ={kappa}: {tk} vs {tl}");
    }
    assert!(time_constant(TimeConstant::Lambda(1.0)).is_err());
    assert!(time_constant(TimeConstant::Kappa(1)).is_err());
    assert_eq!(storage_bits(8, 1).unwrap(), 8.0 * 3f64.log2());
}

/// Exact distribution of one clipped component, by enumerating every
/// sign pattern of the M inputs with the target's input fixed to +1.
fn enumerate(kappa: i64, m: usize, target: Option<usize>) -> Vec<f64> {
    let mut p = vec![0.0; (2 * kappa + 1) as usize];
    let free = m - target.is_some() as usize;
    for bits in 0..1u32 << free {
        let mut x = 0i64;
        let mut b = 0;
        for j in 0..m {
            let s = if Some(j) == target {
                1
            } else {
                b += 1;
                if bits >> (b - 1) & 1 == 1 { 1 } else { -1 }
            };
            x = (x + s).clamp(-kappa, kappa);
        }
        p[(x + kappa) as usize] += 1.0 / (1u64 << free) as f64;
    }
    p
}

#[test]
fn tracker_matches_enumeration() {
    for kappa in [1u32, 2] {
        let mode = TrackerMode::ExactInteger { kappa };
        for m in 1..=6usize {
            for pos in 1..=m {
                let mut hit = tracker_init(mode, Start::Empty).unwrap();
                hit.diffuse(m - pos);
                hit.step(StepKind::Skew);
                hit.diffuse(pos - 1);
                let e = enumerate(kappa as i64, m, Some(m - pos));
                for (a, b) in hit.p.iter().zip(&e) {
                    assert!((a - b).abs() < 1e-15, "κ={kappa} m={m} pos={pos}");
                }
                let r = nonlinear_snr(&NonlinearSpec { mode, n_dim: 100, length: Some(m), position: pos }).unwrap();
                let mean: f64 = e.iter().enumerate().map(|(i, p)| p * (i as f64 - kappa as f64)).sum();
                assert!((r.hit_mean - mean).abs() < 1e-14);
                let d = enumerate(kappa as i64, m, None);
                let var: f64 = d.iter().enumerate().map(|(i, p)| p * (i as f64 - kappa as f64).powi(2)).sum();
                assert!((r.distractor_var - var).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn wide_clip_is_linear() {
    let r = nonlinear_snr(&NonlinearSpec {
        mode: TrackerMode::ExactInteger { kappa: 100 },
        n_dim: 1000,
        length: Some(20),
        position: 10,
    })
    .unwrap();
    assert!((r.snr - (1000.0f64 / 20.0).sqrt()).abs() < 1e-9);
    assert!((r.spread - (19.0f64 / 20.0).sqrt()).abs() < 1e-9);
}

#[test]
fn filled_curve_matches_single_position() {
    let mode = TrackerMode::DiscretizedSquash { gamma: 4.0, half_bins: 100 };
    let curve = filled_curve(mode, 1000, 12).unwrap();
    let one = nonlinear_snr(&NonlinearSpec { mode, n_dim: 1000, length: None, position: 12 }).unwrap();
    assert_eq!(curve[11], one);
    assert!(curve.windows(2).all(|w| w[1].snr <= w[0].snr + 1e-12));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tracker_conserves_probability(
        kappa in 1u32..12,
        gamma in 0.5f64..10.0,
        bins in 1usize..60,
        steps in proptest::collection::vec(any::<bool>(), 0..80),
        filled in any::<bool>(),
    ) {
        let start = if filled { Start::Filled } else { Start::Empty };
        for mode in [TrackerMode::ExactInteger { kappa }, TrackerMode::DiscretizedSquash { gamma, half_bins: bins }] {
            let mut t = tracker_init(mode, start).unwrap();
            for &skew in &steps {
                t.step(if skew { StepKind::Skew } else { StepKind::Diffuse });
            }
            let total: f64 = t.p.iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            prop_assert!(t.p.iter().all(|&p| p >= 0.0));
            let (mean, var) = t.moments();
            let top = t.values().last().copied().unwrap();
            prop_assert!(mean.abs() <= top + 1e-12 && var >= -1e-12);
        }
    }
}

#[test]
fn capacity_search_finds_interior_optimum() {
    let grid: Vec<f64> = (1..=40).map(|i| 25.0 * i as f64).collect();
    let r = capacity_search(&Objective::Length { v_ratio: None }, 1000, 27, &grid, &q()).unwrap();
    assert!(r.best_index > 0 && r.best_index < grid.len() - 1);
    assert!(r.per_neuron.iter().all(|&v| v <= r.i_per_neuron));
    assert_eq!(r.p_corr.len(), r.best_param as usize);
    assert!((r.i_total - total_info(&r.p_corr, 27)).abs() < 1e-9);

    let grid: Vec<f64> = (1..=30).map(|k| k as f64).collect();
    let r = capacity_search(&Objective::ClipBound { length: None }, 1000, 27, &grid, &q()).unwrap();
    assert!(r.best_index > 0 && r.best_index < grid.len() - 1, "{:?}", r.per_neuron);
}

#[test]
fn item_info_rises_above_chance() {
    let mut prev = 0.0;
    for i in 0..=100 {
        let p = 1.0 / 27.0 + (1.0 - 1.0 / 27.0) * i as f64 / 100.0;
        let v = item_info(p, 27);
        assert!(v >= prev - 1e-12);
        prev = v;
    }
}

#[test]
fn collision_matches_enumeration() {
    // N = 3 bipolar components, D = 4 tokens: every codebook with the stored
    // codeword fixed, ties resolved uniformly
    let (n, d) = (3usize, 4usize);
    let words = 1usize << n;
    let mut acc = 0.0;
    let total = words.pow((d - 1) as u32);
    for mut code in 0..total {
        let mut same = 0;
        for _ in 0..d - 1 {
            same += (code % words == 0) as usize;
            code /= words;
        }
        acc += 1.0 / (same + 1) as f64;
    }
    acc /= total as f64;
    let theory = collision_accuracy(n, d, CollisionCount::Distractors).unwrap();
    assert!((acc - theory).abs() < 1e-14, "{acc} vs {theory}");
    assert!((collision_accuracy_closed(n, d, CollisionCount::Distractors) - theory).abs() < 1e-14);
    assert_eq!(collision_accuracy(20, 1, CollisionCount::Distractors).unwrap(), 1.0);
}

#[test]
fn all_correct_conventions() {
    for (s, d, m) in [(5.0, 27usize, 10usize), (4.0, 100, 20), (6.0, 1024, 50)] {
        let model = ScoreModel::equal_variance(s);
        let plate = all_correct_probability(model, d, m, Some(s / 2.0), AllCorrectConvention::Plate, &q()).unwrap();
        let ours = all_correct_probability(model, d, m, None, AllCorrectConvention::Ours, &q()).unwrap();
        assert!(plate < ours, "s={s}: {plate} vs {ours}");
    }
    let model = ScoreModel::equal_variance(3.0);
    assert!(all_correct_probability(model, 5, 6, Some(1.0), AllCorrectConvention::Plate, &q()).is_err());
}

#[test]
fn inversion_round_trip() {
    for (d, eps) in [(27usize, 0.01), (1024, 1e-3), (2, 0.2)] {
        let s2 = invert_accuracy(d, eps, &q()).unwrap();
        assert!((accuracy_numeric(s2.sqrt(), d, None) - (1.0 - eps)).abs() < 1e-9);
        // the LEE rule is conservative
        assert!(required_snr_squared(d, eps, SnrRule::FaCrLee).unwrap() >= s2);
    }
}

#[test]
fn signal_at_one_time_constant() {
    let tau = 50.0;
    let lambda = (-1.0f64 / tau).exp();
    assert!((time_constant(TimeConstant::Lambda(lambda)).unwrap() - tau).abs() < 1e-9);
    let s = snr(&SnrScenario::DecayFilled { n_dim: 4000, contraction: lambda, lookback: 50 }).unwrap();
    let expect = (-1.0f64).exp() * (4000.0 * (1.0 - lambda * lambda)).sqrt();
    assert!((s / expect - 1.0).abs() < 1e-9);
}

#[test]
fn decay_limit_at_unit_contraction() {
    let s = snr(&SnrScenario::DecayFinite { n_dim: 2000, length: 80, contraction: 1.0 - 1e-9, lookback: 0 }).unwrap();
    assert!((s - (2000.0f64 / 80.0).sqrt()).abs() < 1e-6);
}

#[test]
fn chang_is_closer_than_lee() {
    for d in [8usize, 27, 1024] {
        for eps in [1e-2, 1e-3, 1e-4] {
            let exact = invert_accuracy(d, eps, &q()).unwrap();
            let chang = required_snr_squared(d, eps, SnrRule::Chang).unwrap();
            let lee = required_snr_squared(d, eps, SnrRule::FaCrLee).unwrap();
            assert!((chang - exact).abs() < (lee - exact).abs(), "D={d} ε={eps}");
        }
    }
}

#[test]
fn plate_all_correct_is_lower_on_a_grid() {
    let (d, m) = (4096usize, 20usize);
    for n in [500usize, 1000, 2000, 4000] {
        let model = score_model(&SnrScenario::LinearLargeM { n_dim: n, length: m }).unwrap();
        let theta = model.snr / 2.0;
        let plate = all_correct_probability(model, d, m, Some(theta), AllCorrectConvention::Plate, &q()).unwrap();
        let ours = all_correct_probability(model, d, m, None, AllCorrectConvention::Ours, &q()).unwrap();
        assert!(plate < ours, "N={n}: {plate} vs {ours}");
    }
    let s = ScoreModel::equal_variance(40.0);
    assert!((all_correct_probability(s, d, m, Some(20.0), AllCorrectConvention::Plate, &q()).unwrap() - 1.0).abs() < 1e-9);
}
