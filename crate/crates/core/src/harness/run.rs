//! Seeded trial runner.

use super::predict::Predictor;
use super::spec::ExperimentSpec;
use super::stats::{wilson, Z95};
use crate::codebook::{generate_codebook, make_binding_for, BindingOperator, Codebook};
use crate::error::{param, Error, Result};
use crate::memory::{Engine, EnginePath};
use crate::memory::{burn_in_steps, classify, detect, Activation, Detection, NetworkConfig, NoiseModel, Slot};
use crate::seed::{self, stream};
use crate::theory::{item_info, CodeMoments, Start};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Outcome counts for one probe (checkpoint, lookback) summed over trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counts {
    pub hit_samples: u64,
    pub hit_correct: u64,
    pub rej_samples: u64,
    pub rej_correct: u64,
}

impl Counts {
    fn add(&mut self, o: &Counts) {
        self.hit_samples += o.hit_samples;
        self.hit_correct += o.hit_correct;
        self.rej_samples += o.rej_samples;
        self.rej_correct += o.rej_correct;
    }
}

/// One table row: a probe of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub label: String,
    pub scheme: String,
    pub binding: String,
    pub n_dim: usize,
    pub n_tokens: usize,
    pub activation: String,
    /// κ or γ, empty for linear networks.
    pub nonlinearity: Option<f64>,
    pub contraction: f64,
    pub start: String,
    pub noise: String,
    pub noise_level: Option<f64>,
    pub input_sparsity: f64,
    pub code_sparsity: f64,
    pub threshold: Option<f64>,
    pub length: usize,
    pub lookback: usize,
    pub trials: usize,
    pub shared_codebook: bool,
    pub path: String,
    pub hit_samples: u64,
    pub hit_correct: u64,
    pub accuracy: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub theory: Option<f64>,
    pub bits_empirical: f64,
    pub bits_theory: Option<f64>,
    pub rej_samples: u64,
    pub rej_correct: u64,
    pub rejection: Option<f64>,
    pub rejection_theory: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Empirical and theoretical total information of the rows, in bits.
    pub fn total_bits(&self) -> (f64, Option<f64>) {
        let emp = self.rows.iter().map(|r| r.bits_empirical).sum();
        let th = self.rows.iter().map(|r| r.bits_theory).sum();
        (emp, th)
    }
}

/// Prepared experiment: validated spec plus the binding shared by all trials.
pub struct Experiment {
    spec: ExperimentSpec,
    binding: BindingOperator,
    shared: Option<Codebook>,
    probes: Vec<(usize, usize)>,
    path: EnginePath,
}

impl Experiment {
    pub fn new(spec: ExperimentSpec) -> Result<Self> {
        spec.validate()?;
        if matches!(spec.noise, NoiseModel::BitFlip { .. }) && spec.scheme != crate::codebook::Scheme::Hdc {
            return Err(param("bit-flip noise experiments are defined for HDC codes only"));
        }
        let binding = make_binding_for(
            spec.scheme,
            spec.binding,
            spec.n_dim,
            spec.contraction,
            seed::derive(spec.seed, stream::BINDING),
        )?;
        let shared = if spec.shared_codebook {
            Some(generate_codebook(
                spec.scheme,
                spec.n_dim,
                spec.n_tokens,
                spec.code_sparsity,
                seed::derive(spec.seed, stream::CODEBOOK),
            )?)
        } else {
            None
        };
        let config = network(&spec);
        let path = Engine::preferred_path(&config, &binding, &spec.noise);
        let mut probes = Vec::new();
        for &m in &spec.lengths {
            for k in spec.lookbacks.at(m) {
                probes.push((m, k));
            }
        }
        if spec.start == Start::Filled {
            if let crate::harness::Lookbacks::Fixed(ks) = &spec.lookbacks {
                probes.clear();
                for &m in &spec.lengths {
                    probes.extend(ks.iter().map(|&k| (m, k)));
                }
            }
        }
        if probes.is_empty() {
            return Err(param("no probe falls inside the requested lengths"));
        }
        Ok(Experiment { spec, binding, shared, probes, path })
    }

    pub fn spec(&self) -> &ExperimentSpec {
        &self.spec
    }

    /// (length, lookback) pairs in row order.
    pub fn probes(&self) -> &[(usize, usize)] {
        &self.probes
    }

    /// Counts of one trial, one entry per probe. Depends only on the spec and
    /// the trial index.
    pub fn trial(&self, index: u64) -> Result<Vec<Counts>> {
        let spec = &self.spec;
        let trial_seed = seed::derive(seed::derive(spec.seed, stream::TRIAL), index);
        let owned;
        let codebook = match &self.shared {
            Some(cb) => cb,
            None => {
                owned = generate_codebook(
                    spec.scheme,
                    spec.n_dim,
                    spec.n_tokens,
                    spec.code_sparsity,
                    seed::derive(trial_seed, stream::CODEBOOK),
                )?;
                &owned
            }
        };
        let mut rng = seed::rng(trial_seed);
        let config = network(spec);
        let mut engine = Engine::with_path(config, codebook, &self.binding, spec.noise, self.path)?;
        let mut history = Vec::new();
        if spec.start == Start::Filled {
            for _ in 0..burn_in_steps(&config)? {
                let slot = Slot::Token(rng.random_range(0..spec.n_tokens));
                engine.push(slot, &mut rng)?;
                history.push(slot);
            }
        }
        let threshold = spec.threshold.map(|t| t * noiseless_hit(spec));
        let mut counts = vec![Counts::default(); self.probes.len()];
        let mut scores = Vec::with_capacity(spec.n_tokens);
        let mut next_probe = 0;
        let last = *spec.lengths.last().expect("validated");
        for step in 1..=last {
            let slot = if spec.input_sparsity > 0.0 && rng.random::<f64>() < spec.input_sparsity {
                Slot::Empty
            } else {
                Slot::Token(rng.random_range(0..spec.n_tokens))
            };
            engine.push(slot, &mut rng)?;
            history.push(slot);
            while next_probe < self.probes.len() && self.probes[next_probe].0 == step {
                let k = self.probes[next_probe].1;
                if k >= history.len() {
                    return Err(Error::InvalidLookback(format!("lookback {k} after {} steps", history.len())));
                }
                let target = history[history.len() - 1 - k];
                let c = &mut counts[next_probe];
                next_probe += 1;
                if target == Slot::Empty && threshold.is_none() {
                    continue;
                }
                engine.scores(k, &mut rng, &mut scores)?;
                match (target, threshold) {
                    (Slot::Token(d), None) => {
                        c.hit_samples += 1;
                        c.hit_correct += (classify(&scores, &mut rng) == d) as u64;
                    }
                    (Slot::Token(d), Some(t)) => {
                        c.hit_samples += 1;
                        c.hit_correct += (detect(&scores, t, &mut rng) == Detection::Token(d)) as u64;
                    }
                    (Slot::Empty, Some(t)) => {
                        c.rej_samples += 1;
                        c.rej_correct += (detect(&scores, t, &mut rng) == Detection::Reject) as u64;
                    }
                    (Slot::Empty, None) => unreachable!(),
                }
            }
        }
        Ok(counts)
    }

    /// Sum of trial counts over trial indices `range`, serially.
    pub fn counts_serial(&self, range: std::ops::Range<u64>) -> Result<Vec<Counts>> {
        let mut total = vec![Counts::default(); self.probes.len()];
        for i in range {
            merge(&mut total, &self.trial(i)?);
        }
        Ok(total)
    }

    /// Sum of all trial counts, in parallel.
    pub fn counts(&self) -> Result<Vec<Counts>> {
        let zero = || vec![Counts::default(); self.probes.len()];
        (0..self.spec.trials as u64)
            .into_par_iter()
            .map(|i| self.trial(i))
            .try_reduce(zero, |mut a, b| {
                merge(&mut a, &b);
                Ok(a)
            })
    }

    pub fn run(&self) -> Result<SweepResult> {
        let counts = self.counts()?;
        self.rows(&counts)
    }

    /// Table rows for aggregated counts.
    pub fn rows(&self, counts: &[Counts]) -> Result<SweepResult> {
        let spec = &self.spec;
        let predictor = Predictor::new(spec)?;
        let mut rows = Vec::with_capacity(counts.len());
        for (&(m, k), c) in self.probes.iter().zip(counts) {
            let pred = predictor.at(m, k)?;
            let accuracy = if c.hit_samples == 0 { 0.0 } else { c.hit_correct as f64 / c.hit_samples as f64 };
            let (ci_lo, ci_hi) = wilson(c.hit_correct, c.hit_samples, Z95);
            let (nonlinearity, act) = match spec.activation {
                Activation::Linear => (None, "linear"),
                Activation::ClippedLinear { kappa } => (Some(kappa as f64), "clipped"),
                Activation::Tanh { gamma } => (Some(gamma), "tanh"),
            };
            let (noise, noise_level) = match spec.noise {
                NoiseModel::None => ("none", None),
                NoiseModel::ReadoutGaussian { sigma } => ("readout", Some(sigma)),
                NoiseModel::PerStepGaussian { sigma } => ("per_step", Some(sigma)),
                NoiseModel::BitFlip { p } => ("bit_flip", Some(p)),
            };
            rows.push(SweepRow {
                label: spec.label.clone(),
                scheme: spec.scheme.name().to_string(),
                binding: spec.binding.name().to_string(),
                n_dim: spec.n_dim,
                n_tokens: spec.n_tokens,
                activation: act.to_string(),
                nonlinearity,
                contraction: spec.contraction,
                start: match spec.start {
                    Start::Empty => "empty",
                    Start::Filled => "filled",
                }
                .to_string(),
                noise: noise.to_string(),
                noise_level,
                input_sparsity: spec.input_sparsity,
                code_sparsity: spec.code_sparsity,
                threshold: spec.threshold,
                length: m,
                lookback: k,
                trials: spec.trials,
                shared_codebook: spec.shared_codebook,
                path: path_name(self.path).to_string(),
                hit_samples: c.hit_samples,
                hit_correct: c.hit_correct,
                accuracy,
                ci_lo,
                ci_hi,
                theory: pred.accuracy,
                bits_empirical: item_info(accuracy, spec.n_tokens),
                bits_theory: pred.accuracy.map(|p| item_info(p, spec.n_tokens)),
                rej_samples: c.rej_samples,
                rej_correct: c.rej_correct,
                rejection: (c.rej_samples > 0).then(|| c.rej_correct as f64 / c.rej_samples as f64),
                rejection_theory: pred.rejection,
            });
        }
        Ok(SweepResult { rows })
    }
}

fn merge(total: &mut [Counts], part: &[Counts]) {
    for (t, p) in total.iter_mut().zip(part) {
        t.add(p);
    }
}

fn network(spec: &ExperimentSpec) -> NetworkConfig {
    NetworkConfig { activation: spec.activation, contraction: spec.contraction, n_dim: spec.n_dim }
}

fn path_name(p: EnginePath) -> &'static str {
    match p {
        EnginePath::Direct => "direct",
        EnginePath::Cycle => "cycle",
        EnginePath::Spectral => "spectral",
    }
}

/// Expected Φ_dᵀΦ_d, the reference for relative thresholds.
fn noiseless_hit(spec: &ExperimentSpec) -> f64 {
    let m = CodeMoments::new(spec.scheme, spec.n_dim, spec.code_sparsity).expect("validated sparsity");
    m.components * m.self_mean
}

/// Run every probe of one experiment.
pub fn run_trials(spec: &ExperimentSpec) -> Result<SweepResult> {
    Experiment::new(spec.clone())?.run()
}

/// Run a list of experiments (e.g. an expanded grid); rows keep grid order.
pub fn run_sweep(specs: &[ExperimentSpec]) -> Result<SweepResult> {
    if specs.is_empty() {
        return Err(param("empty sweep grid"));
    }
    let mut rows = Vec::new();
    for s in specs {
        rows.extend(run_trials(s)?.rows);
    }
    Ok(SweepResult { rows })
}
