use crate::codebook::{BindingKind, Scheme};
use crate::error::{config, param, Result};
use crate::memory::{Activation, NoiseModel};
use crate::theory::Start;
use serde::{Deserialize, Serialize};

/// Which lookbacks are probed at each checkpoint length M.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", content = "values", rename_all = "snake_case")]
pub enum Lookbacks {
    /// K = M − 1, the first item of the sequence.
    #[default]
    FirstItem,
    /// Every K in [0, M).
    All,
    /// The listed K values (those < M).
    Fixed(Vec<usize>),
}

impl Lookbacks {
    pub fn at(&self, length: usize) -> Vec<usize> {
        match self {
            Lookbacks::FirstItem => vec![length - 1],
            Lookbacks::All => (0..length).collect(),
            Lookbacks::Fixed(ks) => ks.iter().copied().filter(|&k| k < length).collect(),
        }
    }
}

fn one() -> f64 {
    1.0
}

fn linear() -> Activation {
    Activation::Linear
}

fn default_bins() -> usize {
    400
}

fn default_start() -> Start {
    Start::Empty
}

/// Declarative description of a Monte-Carlo experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default)]
    pub label: String,
    pub scheme: Scheme,
    pub binding: BindingKind,
    pub n_dim: usize,
    pub n_tokens: usize,
    #[serde(default = "linear")]
    pub activation: Activation,
    #[serde(default = "one")]
    pub contraction: f64,
    /// Empty (x(0) = 0) or filled (burn-in to equilibrium first).
    #[serde(default = "default_start")]
    pub start: Start,
    /// Checkpoints: number of update steps after the start, strictly increasing.
    pub lengths: Vec<usize>,
    #[serde(default)]
    pub lookbacks: Lookbacks,
    #[serde(default)]
    pub noise: NoiseModel,
    /// Probability that an input slot is empty.
    #[serde(default)]
    pub input_sparsity: f64,
    /// Fraction of codebook entries zeroed.
    #[serde(default)]
    pub code_sparsity: f64,
    /// Detection threshold as a fraction of the noiseless hit score N·E[Φ²].
    #[serde(default)]
    pub threshold: Option<f64>,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    /// One codebook for all trials instead of a fresh one per trial.
    #[serde(default)]
    pub shared_codebook: bool,
    /// Half-width n of the tanh tracker's 2n+1 bins.
    #[serde(default = "default_bins")]
    pub tracker_bins: usize,
}

impl ExperimentSpec {
    /// Linear HDC/permutation experiment with defaults for everything else.
    pub fn new(scheme: Scheme, binding: BindingKind, n_dim: usize, n_tokens: usize, lengths: Vec<usize>, trials: usize) -> Self {
        ExperimentSpec {
            label: String::new(),
            scheme,
            binding,
            n_dim,
            n_tokens,
            activation: Activation::Linear,
            contraction: 1.0,
            start: Start::Empty,
            lengths,
            lookbacks: Lookbacks::FirstItem,
            noise: NoiseModel::None,
            input_sparsity: 0.0,
            code_sparsity: 0.0,
            threshold: None,
            trials,
            seed: 0,
            shared_codebook: false,
            tracker_bins: 400,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(param("trials must be at least 1"));
        }
        if self.n_tokens < 2 {
            return Err(param("n_tokens must be at least 2"));
        }
        if self.lengths.is_empty() {
            return Err(config("lengths must not be empty"));
        }
        if self.lengths.windows(2).any(|w| w[0] >= w[1]) || self.lengths[0] == 0 {
            return Err(config("lengths must be positive and strictly increasing"));
        }
        if let Lookbacks::Fixed(ks) = &self.lookbacks {
            if ks.is_empty() {
                return Err(config("fixed lookbacks must not be empty"));
            }
        }
        if !(0.0..=1.0).contains(&self.input_sparsity) {
            return Err(param("input_sparsity outside [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.code_sparsity) {
            return Err(param("code_sparsity outside [0, 1]"));
        }
        if let Some(t) = self.threshold {
            if t.is_nan() {
                return Err(param("threshold must not be NaN"));
            }
        }
        if self.start == Start::Filled && self.activation == Activation::Linear && self.contraction >= 1.0 {
            return Err(config("a filled start needs contraction below 1 or a saturating activation"));
        }
        if self.tracker_bins == 0 {
            return Err(param("tracker_bins must be positive"));
        }
        self.activation.validate()?;
        self.noise.validate()
    }
}

/// A parameter an axis of a sweep grid can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    NDim,
    NTokens,
    Contraction,
    Kappa,
    Gamma,
    NoiseLevel,
    InputSparsity,
    CodeSparsity,
    Threshold,
    Seed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub field: Field,
    pub values: Vec<f64>,
}

/// Cartesian product of axes applied to a base spec. The last axis varies fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub base: ExperimentSpec,
    #[serde(default)]
    pub axes: Vec<Axis>,
}

impl SweepGrid {
    pub fn expand(&self) -> Result<Vec<ExperimentSpec>> {
        let mut specs = vec![self.base.clone()];
        for axis in &self.axes {
            if axis.values.is_empty() {
                return Err(config(format!("axis {:?} has no values", axis.field)));
            }
            let mut next = Vec::with_capacity(specs.len() * axis.values.len());
            for s in &specs {
                for &v in &axis.values {
                    let mut t = s.clone();
                    set_field(&mut t, axis.field, v)?;
                    next.push(t);
                }
            }
            specs = next;
        }
        Ok(specs)
    }
}

fn as_count(v: f64, what: &str) -> Result<usize> {
    if v >= 0.0 && v.fract() == 0.0 {
        Ok(v as usize)
    } else {
        Err(param(format!("{what} must be a non-negative integer, got {v}")))
    }
}

fn set_field(s: &mut ExperimentSpec, field: Field, v: f64) -> Result<()> {
    match field {
        Field::NDim => s.n_dim = as_count(v, "n_dim")?,
        Field::NTokens => s.n_tokens = as_count(v, "n_tokens")?,
        Field::Contraction => s.contraction = v,
        Field::Kappa => s.activation = Activation::ClippedLinear { kappa: as_count(v, "kappa")? as u32 },
        Field::Gamma => s.activation = Activation::Tanh { gamma: v },
        Field::NoiseLevel => {
            s.noise = match s.noise {
                NoiseModel::None => return Err(config("noise_level axis needs a noise model in the base spec")),
                NoiseModel::ReadoutGaussian { .. } => NoiseModel::ReadoutGaussian { sigma: v },
                NoiseModel::PerStepGaussian { .. } => NoiseModel::PerStepGaussian { sigma: v },
                NoiseModel::BitFlip { .. } => NoiseModel::BitFlip { p: v },
            }
        }
        Field::InputSparsity => s.input_sparsity = v,
        Field::CodeSparsity => s.code_sparsity = v,
        Field::Threshold => s.threshold = Some(v),
        Field::Seed => s.seed = as_count(v, "seed")? as u64,
    }
    Ok(())
}
