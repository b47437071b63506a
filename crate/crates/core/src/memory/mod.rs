//! The recurrent superposition network: encoding by trajectory association,
//! optional saturating activations and noise, and readout by dereferencing
//! plus winner-take-all or thresholded detection.

mod engine;
mod sequence;

pub use engine::{Engine, EnginePath};
pub use sequence::{InputSequence, Slot};

use crate::codebook::{similarity, BindingKind, BindingOperator, Codebook, Scheme};
use crate::error::{config, dim, param, Error, Result};
use crate::theory::time_constant::{time_constant, TimeConstant};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// Neural activation f applied after each update.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Activation {
    Linear,
    /// Clip to [−κ, κ].
    ClippedLinear { kappa: u32 },
    /// γ tanh(x/γ).
    Tanh { gamma: f64 },
}

impl Activation {
    #[inline]
    pub fn apply(&self, v: f64) -> f64 {
        match *self {
            Activation::Linear => v,
            Activation::ClippedLinear { kappa } => v.clamp(-(kappa as f64), kappa as f64),
            Activation::Tanh { gamma } => gamma * (v / gamma).tanh(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Activation::Linear => Ok(()),
            Activation::ClippedLinear { kappa } if kappa >= 1 => Ok(()),
            Activation::ClippedLinear { .. } => Err(param("kappa must be at least 1")),
            Activation::Tanh { gamma } if gamma > 0.0 && gamma.is_finite() => Ok(()),
            Activation::Tanh { gamma } => Err(param(format!("gamma {gamma} must be positive"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkConfig {
    pub activation: Activation,
    pub contraction: f64,
    pub n_dim: usize,
}

/// Noise injected into the network or its readout.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseModel {
    #[default]
    None,
    /// N(0, σ²) added to each component of x before readout.
    ReadoutGaussian { sigma: f64 },
    /// N(0, σ²) added to each component on every update, before f.
    PerStepGaussian { sigma: f64 },
    /// Each component of x has its sign flipped with probability p before readout.
    BitFlip { p: f64 },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::None => Ok(()),
            NoiseModel::ReadoutGaussian { sigma } | NoiseModel::PerStepGaussian { sigma } => {
                if sigma >= 0.0 && sigma.is_finite() {
                    Ok(())
                } else {
                    Err(param(format!("noise sigma {sigma} must be non-negative")))
                }
            }
            NoiseModel::BitFlip { p } => {
                if (0.0..=0.5).contains(&p) {
                    Ok(())
                } else {
                    Err(param(format!("bit-flip probability {p} outside [0, 0.5]")))
                }
            }
        }
    }

    /// Perturb x in place for readout. Draws follow component order.
    pub fn apply_readout<R: Rng>(&self, x: &mut [f64], rng: &mut R) {
        match *self {
            NoiseModel::ReadoutGaussian { sigma } if sigma > 0.0 => {
                let normal = Normal::new(0.0, sigma).expect("finite sigma");
                for v in x.iter_mut() {
                    *v += normal.sample(rng);
                }
            }
            NoiseModel::BitFlip { p } if p > 0.0 => {
                for v in x.iter_mut() {
                    if rng.random::<f64>() < p {
                        *v = -*v;
                    }
                }
            }
            _ => {}
        }
    }

    pub(crate) fn per_step_sigma(&self) -> Option<f64> {
        match *self {
            NoiseModel::PerStepGaussian { sigma } if sigma > 0.0 => Some(sigma),
            _ => None,
        }
    }

    pub(crate) fn has_readout(&self) -> bool {
        matches!(*self, NoiseModel::ReadoutGaussian { sigma } if sigma > 0.0)
            || matches!(*self, NoiseModel::BitFlip { p } if p > 0.0)
    }
}

/// Network state x(m) with its step counters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryState {
    pub x: Vec<f64>,
    pub steps_elapsed: usize,
    pub items_stored: usize,
}

impl MemoryState {
    pub fn empty(n_dim: usize) -> Self {
        MemoryState { x: vec![0.0; n_dim], steps_elapsed: 0, items_stored: 0 }
    }
}

/// Outcome of thresholded detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Detection {
    Token(usize),
    Reject,
}

/// Check that the pieces of a network fit together.
pub fn validate(config: &NetworkConfig, codebook: &Codebook, binding: &BindingOperator, noise: &NoiseModel) -> Result<()> {
    config.activation.validate()?;
    noise.validate()?;
    if codebook.n_dim != config.n_dim || binding.n_dim() != config.n_dim {
        return Err(dim(format!(
            "network n_dim {}, codebook {}, binding {}",
            config.n_dim,
            codebook.n_dim,
            binding.n_dim()
        )));
    }
    if !(config.contraction > 0.0 && config.contraction <= 1.0) {
        return Err(param(format!("contraction {} outside (0, 1]", config.contraction)));
    }
    if binding.contraction() != config.contraction {
        return Err(config_err(format!(
            "network contraction {} differs from binding contraction {}",
            config.contraction,
            binding.contraction()
        )));
    }
    if let Activation::ClippedLinear { .. } = config.activation {
        if codebook.scheme != Scheme::Hdc || binding.kind() != BindingKind::Permutation {
            return Err(config_err("clipped-linear networks need an HDC codebook and a permutation binding"));
        }
        if config.contraction != 1.0 {
            return Err(config_err("clipped-linear networks need contraction 1"));
        }
        if noise.per_step_sigma().is_some() {
            return Err(config_err("per-step Gaussian noise breaks the integer clipped dynamics"));
        }
    }
    Ok(())
}

fn config_err(msg: impl Into<String>) -> Error {
    config(msg)
}

fn check_slot(slot: Slot, codebook: &Codebook) -> Result<()> {
    match slot {
        Slot::Token(d) if d >= codebook.n_tokens => {
            Err(param(format!("token {d} outside codebook of {} tokens", codebook.n_tokens)))
        }
        _ => Ok(()),
    }
}

fn step_in_place<R: Rng>(
    config: &NetworkConfig,
    state: &mut MemoryState,
    scratch: &mut [f64],
    slot: Slot,
    codebook: &Codebook,
    binding: &BindingOperator,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<()> {
    binding.apply_into(&state.x, 1, scratch)?;
    if let Slot::Token(d) = slot {
        for (s, p) in scratch.iter_mut().zip(codebook.column(d)) {
            *s += p;
        }
        state.items_stored += 1;
    }
    if let Some(sigma) = noise.per_step_sigma() {
        let normal = Normal::new(0.0, sigma).expect("finite sigma");
        for s in scratch.iter_mut() {
            *s += normal.sample(rng);
        }
    }
    for (x, s) in state.x.iter_mut().zip(scratch.iter()) {
        *x = config.activation.apply(*s);
    }
    state.steps_elapsed += 1;
    Ok(())
}

/// One update cycle x ← f(W x + Φ a).
pub fn step<R: Rng>(
    config: &NetworkConfig,
    state: &MemoryState,
    slot: Slot,
    codebook: &Codebook,
    binding: &BindingOperator,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<MemoryState> {
    validate(config, codebook, binding, noise)?;
    check_slot(slot, codebook)?;
    if state.x.len() != config.n_dim {
        return Err(dim("state length differs from n_dim"));
    }
    let mut next = state.clone();
    let mut scratch = vec![0.0; config.n_dim];
    step_in_place(config, &mut next, &mut scratch, slot, codebook, binding, noise, rng)?;
    Ok(next)
}

/// Encode a sequence starting from x(0) = 0.
pub fn encode_sequence<R: Rng>(
    config: &NetworkConfig,
    codebook: &Codebook,
    binding: &BindingOperator,
    sequence: &InputSequence,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<MemoryState> {
    validate(config, codebook, binding, noise)?;
    for &slot in &sequence.slots {
        check_slot(slot, codebook)?;
    }
    let mut state = MemoryState::empty(config.n_dim);
    let mut scratch = vec![0.0; config.n_dim];
    for &slot in &sequence.slots {
        step_in_place(config, &mut state, &mut scratch, slot, codebook, binding, noise, rng)?;
    }
    Ok(state)
}

/// Burn-in length used to reach the filled equilibrium: max(10τ, 10κ²),
/// with γ standing in for κ in tanh networks.
pub fn burn_in_steps(config: &NetworkConfig) -> Result<usize> {
    let steps = match config.activation {
        Activation::Linear => {
            if config.contraction >= 1.0 {
                return Err(config_err("a linear network without contraction has no filled equilibrium"));
            }
            10.0 * time_constant(TimeConstant::Lambda(config.contraction))?
        }
        Activation::ClippedLinear { kappa } => {
            let k = kappa as f64;
            let tau = time_constant(TimeConstant::Kappa(kappa)).unwrap_or(1.0);
            (10.0 * tau).max(10.0 * k * k)
        }
        Activation::Tanh { gamma } => {
            let tau = if config.contraction < 1.0 {
                time_constant(TimeConstant::Lambda(config.contraction))?
            } else {
                1.0
            };
            10.0 * tau.max(gamma * gamma)
        }
    };
    Ok(steps.ceil().max(1.0) as usize)
}

/// Run the network from zero on uniformly random tokens until it reaches its
/// filled equilibrium.
pub fn filled_state<R: Rng>(
    config: &NetworkConfig,
    codebook: &Codebook,
    binding: &BindingOperator,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<MemoryState> {
    validate(config, codebook, binding, noise)?;
    let steps = burn_in_steps(config)?;
    let mut state = MemoryState::empty(config.n_dim);
    let mut scratch = vec![0.0; config.n_dim];
    for _ in 0..steps {
        let slot = Slot::Token(rng.random_range(0..codebook.n_tokens));
        step_in_place(config, &mut state, &mut scratch, slot, codebook, binding, noise, rng)?;
    }
    Ok(state)
}

/// Guard against λ^{−K} leaving the double range.
pub(crate) fn check_lookback(binding: &BindingOperator, k: usize, steps_elapsed: usize) -> Result<()> {
    if k >= steps_elapsed {
        return Err(Error::InvalidLookback(format!("lookback {k} with only {steps_elapsed} steps elapsed")));
    }
    let inv = binding.scale(-(k as i64));
    if !inv.is_finite() || binding.scale(k as i64) == 0.0 {
        return Err(Error::UnretrievableLookback(format!(
            "lambda^-{k} overflows for lambda = {}",
            binding.contraction()
        )));
    }
    Ok(())
}

/// Scores h_d = Φ_dᵀ W^{−K} x for every token.
pub fn decode_scores<R: Rng>(
    codebook: &Codebook,
    binding: &BindingOperator,
    state: &MemoryState,
    lookback: usize,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<Vec<f64>> {
    noise.validate()?;
    if state.x.len() != codebook.n_dim || binding.n_dim() != codebook.n_dim {
        return Err(dim("state, codebook and binding dimensions differ"));
    }
    check_lookback(binding, lookback, state.steps_elapsed)?;
    let mut x = state.x.clone();
    noise.apply_readout(&mut x, rng);
    let y = crate::codebook::bind(binding, &x, -(lookback as i64))?;
    codebook.columns().map(|c| similarity(codebook.scheme, c, &y)).collect()
}

/// Winner-take-all with uniform tie-breaking. Draws from `rng` only on ties.
pub fn classify<R: Rng>(scores: &[f64], rng: &mut R) -> usize {
    assert!(!scores.is_empty(), "classify needs at least one score");
    let mut best = 0;
    let mut ties = 1u32;
    for (d, &h) in scores.iter().enumerate().skip(1) {
        if h > scores[best] {
            best = d;
            ties = 1;
        } else if h == scores[best] {
            ties += 1;
            if rng.random_range(0..ties) == 0 {
                best = d;
            }
        }
    }
    best
}

/// Reject when every score is below θ, otherwise winner-take-all.
pub fn detect<R: Rng>(scores: &[f64], threshold: f64, rng: &mut R) -> Detection {
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max < threshold {
        Detection::Reject
    } else {
        Detection::Token(classify(scores, rng))
    }
}
