//! Signal-to-noise ratios of the retrieval scores and the matching Gaussian
//! score models.

use super::accuracy::ScoreModel;
use super::tracker::{nonlinear_snr, NonlinearSpec};
use crate::codebook::Scheme;
use crate::error::{param, Error, Result};
use crate::memory::NoiseModel;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SnrScenario {
    LinearLargeM { n_dim: usize, length: usize },
    LinearExact { n_dim: usize, length: usize, v_ratio: f64 },
    DecayFinite { n_dim: usize, length: usize, contraction: f64, lookback: usize },
    DecayFilled { n_dim: usize, contraction: f64, lookback: usize },
    ReadoutNoise { n_dim: usize, length: usize, sigma: f64 },
    PerStepNoise { n_dim: usize, length: usize, sigma: f64 },
    BitFlip { n_dim: usize, length: usize, p: f64 },
    NonlinearTracked(NonlinearSpec),
}

fn need_length(m: usize) -> Result<f64> {
    if m == 0 {
        Err(Error::UndefinedSnr("sequence length M = 0".into()))
    } else {
        Ok(m as f64)
    }
}

fn need_lambda(l: f64, closed: bool) -> Result<()> {
    let ok = l > 0.0 && if closed { l <= 1.0 } else { l < 1.0 };
    if ok {
        Ok(())
    } else {
        Err(param(format!("contraction {l} outside its range")))
    }
}

/// Σ_{j=0}^{M−1} λ^{2j}, stable as λ → 1.
pub(crate) fn geometric_energy(lambda: f64, length: f64) -> f64 {
    let l2 = lambda * lambda;
    if 1.0 - l2 < 1e-6 {
        // series in ε = 1 − λ²
        let e = 1.0 - l2;
        length - e * length * (length - 1.0) / 2.0
    } else {
        (1.0 - l2.powf(length)) / (1.0 - l2)
    }
}

/// SNR s of a scenario, by the closed formulas for bipolar codes.
pub fn snr(scenario: &SnrScenario) -> Result<f64> {
    match *scenario {
        SnrScenario::LinearLargeM { n_dim, length } => Ok((n_dim as f64 / need_length(length)?).sqrt()),
        SnrScenario::LinearExact { n_dim, length, v_ratio } => {
            let m = need_length(length)?;
            if v_ratio < 0.0 {
                return Err(param("v_ratio must be non-negative"));
            }
            let denom = m - 1.0 + v_ratio;
            if denom <= 0.0 {
                return Ok(f64::INFINITY);
            }
            Ok((n_dim as f64 / denom).sqrt())
        }
        SnrScenario::DecayFinite { n_dim, length, contraction, lookback } => {
            let m = need_length(length)?;
            need_lambda(contraction, true)?;
            Ok(contraction.powi(lookback as i32) * (n_dim as f64 / geometric_energy(contraction, m)).sqrt())
        }
        SnrScenario::DecayFilled { n_dim, contraction, lookback } => {
            need_lambda(contraction, true)?;
            Ok(contraction.powi(lookback as i32) * (n_dim as f64 * (1.0 - contraction * contraction)).sqrt())
        }
        SnrScenario::ReadoutNoise { n_dim, length, sigma } => {
            Ok((n_dim as f64 / (need_length(length)? + sigma * sigma)).sqrt())
        }
        SnrScenario::PerStepNoise { n_dim, length, sigma } => {
            Ok((n_dim as f64 / (need_length(length)? * (1.0 + sigma * sigma))).sqrt())
        }
        SnrScenario::BitFlip { n_dim, length, p } => {
            if !(0.0..=0.5).contains(&p) {
                return Err(param(format!("bit-flip probability {p} outside [0, 0.5]")));
            }
            let g = 1.0 - 2.0 * p;
            Ok((n_dim as f64 * g * g / (need_length(length)? + 2.0 * p)).sqrt())
        }
        SnrScenario::NonlinearTracked(spec) => Ok(nonlinear_snr(&spec)?.snr),
    }
}

/// Full score model (hit mean and relative hit spread) of a scenario.
///
/// Linear scenarios are evaluated for bipolar codes; the bit-flip case uses
/// the exact moments of flipped bipolar states, whose distractor variance is
/// M rather than M + 2p.
pub fn score_model(scenario: &SnrScenario) -> Result<ScoreModel> {
    let hdc = CodeMoments::new(Scheme::Hdc, 1, 0.0)?;
    let model = |n: usize, m: f64, lambda: f64, k: usize, filled: bool, noise: NoiseModel| {
        let terms = LinearTerms::new(m, lambda, k, filled, noise)?;
        hdc.with_components(n as f64).model(&terms, noise)
    };
    match *scenario {
        SnrScenario::LinearLargeM { .. } => Ok(ScoreModel::equal_variance(snr(scenario)?)),
        SnrScenario::LinearExact { n_dim, length, v_ratio } => {
            let m = need_length(length)?;
            if v_ratio < 0.0 {
                return Err(param("v_ratio must be non-negative"));
            }
            Ok(ScoreModel { snr: (n_dim as f64 / m).sqrt(), spread: ((m - 1.0 + v_ratio) / m).sqrt() })
        }
        SnrScenario::DecayFinite { n_dim, length, contraction, lookback } => {
            need_lambda(contraction, true)?;
            model(n_dim, need_length(length)?, contraction, lookback, false, NoiseModel::None)
        }
        SnrScenario::DecayFilled { n_dim, contraction, lookback } => {
            need_lambda(contraction, false)?;
            model(n_dim, 0.0, contraction, lookback, true, NoiseModel::None)
        }
        SnrScenario::ReadoutNoise { n_dim, length, sigma } => {
            model(n_dim, need_length(length)?, 1.0, 0, false, NoiseModel::ReadoutGaussian { sigma })
        }
        SnrScenario::PerStepNoise { n_dim, length, sigma } => {
            model(n_dim, need_length(length)?, 1.0, 0, false, NoiseModel::PerStepGaussian { sigma })
        }
        SnrScenario::BitFlip { n_dim, length, p } => {
            model(n_dim, need_length(length)?, 1.0, 0, false, NoiseModel::BitFlip { p })
        }
        SnrScenario::NonlinearTracked(spec) => {
            let r = nonlinear_snr(&spec)?;
            Ok(ScoreModel { snr: r.snr, spread: r.spread })
        }
    }
}

/// Per-component moments of a codebook, in the units the score sums over.
/// FHRR is counted per complex element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodeMoments {
    /// Number of summed components (N, or N/2 for FHRR).
    pub components: f64,
    /// Mean of a self term Φ_{d,i}·Φ_{d,i}.
    pub self_mean: f64,
    /// Variance of a self term.
    pub self_var: f64,
    /// Variance of a cross term between independent codewords.
    pub cross_var: f64,
    /// Variance of a codeword component against unit-variance real noise.
    pub noise_gain: f64,
}

impl CodeMoments {
    pub fn new(scheme: Scheme, n_dim: usize, sparsity: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&sparsity) {
            return Err(param(format!("sparsity {sparsity} outside [0, 1]")));
        }
        let q = 1.0 - sparsity;
        let n = n_dim as f64;
        Ok(match scheme {
            Scheme::Hdc => CodeMoments {
                components: n,
                self_mean: q,
                self_var: q * sparsity,
                cross_var: q * q,
                noise_gain: q,
            },
            Scheme::Hrr | Scheme::RandomUnitary => CodeMoments {
                components: n,
                self_mean: q / n,
                self_var: 3.0 * q / (n * n) - q * q / (n * n),
                cross_var: q * q / (n * n),
                noise_gain: q / n,
            },
            Scheme::Fhrr => CodeMoments {
                components: n / 2.0,
                self_mean: q,
                self_var: q * sparsity,
                cross_var: q * q / 2.0,
                noise_gain: q,
            },
        })
    }

    fn with_components(mut self, n: f64) -> Self {
        self.components = n;
        self
    }

    /// V_Φ(x²)/V_Φ(x)² in the crosstalk formula.
    pub fn v_ratio(&self) -> f64 {
        self.self_var / self.cross_var
    }

    /// Gaussian model of the scores for a linear network.
    pub fn model(&self, terms: &LinearTerms, noise: NoiseModel) -> Result<ScoreModel> {
        if self.cross_var == 0.0 {
            return Ok(ScoreModel { snr: 0.0, spread: 1.0 });
        }
        let noise_var = self.noise_gain * terms.noise_energy;
        let mut mean = self.self_mean;
        let dist = self.cross_var * terms.item_energy + noise_var;
        let mut hit = self.cross_var * (terms.item_energy - 1.0) + self.self_var + noise_var;
        if let NoiseModel::BitFlip { p } = noise {
            let g = 1.0 - 2.0 * p;
            hit += self.self_mean * self.self_mean * (1.0 - g * g);
            mean *= g;
        }
        Ok(ScoreModel {
            snr: self.components.sqrt() * mean / dist.sqrt(),
            spread: (hit.max(0.0) / dist).sqrt(),
        })
    }
}

/// Energies entering a linear network's scores after rescaling by λ^{−K}:
/// Σ over stored items of their squared weight (target weight 1) and the
/// accumulated noise variance per unit σ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearTerms {
    pub item_energy: f64,
    pub noise_energy: f64,
}

impl LinearTerms {
    /// `items` stored items over as many steps, probed at lookback `k`
    /// (0 = newest). With `filled`, infinitely many items precede.
    pub fn new(items: f64, lambda: f64, k: usize, filled: bool, noise: NoiseModel) -> Result<Self> {
        let inv = lambda.powi(-2 * k as i32);
        if !inv.is_finite() {
            return Err(Error::UnretrievableLookback(format!("lambda^-{k} overflows")));
        }
        let energy = if filled {
            if lambda >= 1.0 {
                return Err(param("a filled linear network needs contraction below 1"));
            }
            1.0 / (1.0 - lambda * lambda)
        } else {
            geometric_energy(lambda, items)
        };
        let item_energy = energy * inv;
        let noise_energy = match noise {
            NoiseModel::ReadoutGaussian { sigma } => sigma * sigma * inv,
            NoiseModel::PerStepGaussian { sigma } => sigma * sigma * item_energy,
            _ => 0.0,
        };
        Ok(LinearTerms { item_energy, noise_energy })
    }
}
