//! Monte-Carlo runs of the distributed shift register under bit flips.

use super::run::{SweepResult, SweepRow};
use super::spec::Lookbacks;
use super::stats::{wilson, Z95};
use crate::dsr::{dsr_accuracy, dsr_decode, dsr_encode, DsrCode};
use crate::error::{param, Result};
use crate::seed::{self, stream};
use crate::theory::item_info;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DsrSpec {
    #[serde(default)]
    pub label: String,
    pub n_dim: usize,
    pub n_tokens: usize,
    pub length: usize,
    #[serde(default)]
    pub lookbacks: Lookbacks,
    #[serde(default)]
    pub p_flip: f64,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
}

/// One row per lookback still held by the register.
pub fn run_dsr(spec: &DsrSpec) -> Result<SweepResult> {
    if spec.trials == 0 {
        return Err(param("trials must be at least 1"));
    }
    if spec.length == 0 {
        return Err(param("length must be positive"));
    }
    let code = DsrCode::new(spec.n_dim, spec.n_tokens)?;
    let held = spec.length.min(code.capacity_slots);
    let ks: Vec<usize> = spec.lookbacks.at(spec.length).into_iter().filter(|&k| k < held).collect();
    if ks.is_empty() {
        return Err(param("no lookback is held by the register"));
    }
    let trial = |i: u64| -> Result<Vec<u64>> {
        let mut rng = seed::rng(seed::derive(seed::derive(spec.seed, stream::TRIAL), i));
        let seq: Vec<usize> = (0..spec.length).map(|_| rng.random_range(0..spec.n_tokens)).collect();
        let state = dsr_encode(&code, &seq)?;
        ks.iter()
            .map(|&k| Ok((dsr_decode(&code, &state, k, spec.p_flip, &mut rng)? == seq[spec.length - 1 - k]) as u64))
            .collect()
    };
    let correct = (0..spec.trials as u64).into_par_iter().map(trial).try_reduce(
        || vec![0; ks.len()],
        |mut a, b| {
            a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
            Ok(a)
        },
    )?;
    let theory = dsr_accuracy(&code, spec.p_flip);
    let n = spec.trials as u64;
    let rows = ks
        .iter()
        .zip(&correct)
        .map(|(&k, &c)| {
            let accuracy = c as f64 / n as f64;
            let (ci_lo, ci_hi) = wilson(c, n, Z95);
            SweepRow {
                label: spec.label.clone(),
                scheme: "dsr".into(),
                binding: "shift".into(),
                n_dim: spec.n_dim,
                n_tokens: spec.n_tokens,
                activation: "linear".into(),
                nonlinearity: None,
                contraction: 1.0,
                start: "empty".into(),
                noise: "bit_flip".into(),
                noise_level: Some(spec.p_flip),
                input_sparsity: 0.0,
                code_sparsity: 0.0,
                threshold: None,
                length: spec.length,
                lookback: k,
                trials: spec.trials,
                shared_codebook: true,
                path: "direct".into(),
                hit_samples: n,
                hit_correct: c,
                accuracy,
                ci_lo,
                ci_hi,
                theory: Some(theory),
                bits_empirical: item_info(accuracy, spec.n_tokens),
                bits_theory: Some(item_info(theory, spec.n_tokens)),
                rej_samples: 0,
                rej_correct: 0,
                rejection: None,
                rejection_theory: None,
            }
        })
        .collect();
    Ok(SweepResult { rows })
}
