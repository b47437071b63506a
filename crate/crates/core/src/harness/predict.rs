//! Theory values for harness rows.
//!
//! Linear networks use the Gaussian score model built from the code moments
//! and the weighted energy of everything stored besides the probed item.
//! Clipped and tanh networks on bipolar codes with permutation binding use
//! the distribution tracker.

use super::spec::{ExperimentSpec, Lookbacks};
use crate::codebook::{BindingKind, Scheme};
use crate::error::Result;
use crate::memory::{Activation, NoiseModel};
use crate::theory::normal::cdf;
use crate::theory::snr::geometric_energy;
use crate::theory::{
    accuracy_model, filled_curve, nonlinear_snr, CodeMoments, LinearTerms, NonlinearSnr, NonlinearSpec, Quadrature,
    ScoreModel, Start, TrackerMode,
};

/// Predicted hit accuracy and correct-rejection rate at one probe.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Prediction {
    pub accuracy: Option<f64>,
    pub rejection: Option<f64>,
}

enum Kind {
    Linear(CodeMoments),
    Tracked { mode: TrackerMode, filled: Vec<NonlinearSnr> },
    Unsupported,
}

pub struct Predictor<'a> {
    spec: &'a ExperimentSpec,
    kind: Kind,
    quad: Quadrature,
}

impl<'a> Predictor<'a> {
    pub fn new(spec: &'a ExperimentSpec) -> Result<Self> {
        let quad = Quadrature::default();
        let kind = match spec.activation {
            Activation::Linear => Kind::Linear(CodeMoments::new(spec.scheme, spec.n_dim, spec.code_sparsity)?),
            act => match tracker_mode(spec, act) {
                Some(mode) => {
                    let filled = if spec.start == Start::Filled {
                        let max_k = spec.lengths.iter().map(|&m| lookbacks_max(spec, m)).max().unwrap_or(0);
                        filled_curve(mode, spec.n_dim, max_k + 1)?
                    } else {
                        Vec::new()
                    };
                    Kind::Tracked { mode, filled }
                }
                None => Kind::Unsupported,
            },
        };
        Ok(Predictor { spec, kind, quad })
    }

    /// Prediction for the item `lookback` steps back at checkpoint `length`.
    pub fn at(&self, length: usize, lookback: usize) -> Result<Prediction> {
        match &self.kind {
            Kind::Linear(moments) => self.linear(moments, length, lookback),
            Kind::Tracked { mode, filled } => {
                let r = if self.spec.start == Start::Filled {
                    filled[lookback]
                } else {
                    nonlinear_snr(&NonlinearSpec {
                        mode: *mode,
                        n_dim: self.spec.n_dim,
                        length: Some(length),
                        position: lookback + 1,
                    })?
                };
                let model = ScoreModel { snr: r.snr, spread: r.spread };
                let theta = self.spec.threshold.map(|t| t * (self.spec.n_dim as f64).sqrt() / r.distractor_var.sqrt());
                Ok(Prediction {
                    accuracy: Some(accuracy_model(model, self.spec.n_tokens, theta, &self.quad)),
                    rejection: None,
                })
            }
            Kind::Unsupported => Ok(Prediction::default()),
        }
    }

    fn linear(&self, moments: &CodeMoments, length: usize, k: usize) -> Result<Prediction> {
        let spec = self.spec;
        let lambda = spec.contraction;
        let filled = spec.start == Start::Filled;
        let keep = 1.0 - spec.input_sparsity;
        let inv = lambda.powi(-2 * k as i32);
        let burn = if filled { lambda.powi(2 * length as i32) / (1.0 - lambda * lambda) } else { 0.0 };
        let noise_energy = match spec.noise {
            NoiseModel::ReadoutGaussian { sigma } => sigma * sigma * inv,
            NoiseModel::PerStepGaussian { sigma } => {
                sigma * sigma * (geometric_energy(lambda, length as f64) + burn) * inv
            }
            _ => 0.0,
        };
        let eval = |others: f64| -> Result<(f64, Option<f64>)> {
            let hit = LinearTerms { item_energy: 1.0 + others * inv, noise_energy };
            let model = moments.model(&hit, spec.noise)?;
            let theta = spec.threshold.map(|t| self.theta_std(moments, &hit, t));
            let acc = accuracy_model(model, spec.n_tokens, theta, &self.quad);
            let rej = spec.threshold.map(|t| {
                let empty = LinearTerms { item_energy: others * inv, noise_energy };
                let var = moments.cross_var * empty.item_energy + moments.noise_gain * empty.noise_energy;
                if var <= 0.0 {
                    return if t > 0.0 { 1.0 } else { 0.0 };
                }
                cdf(self.theta_std(moments, &empty, t)).powi(spec.n_tokens as i32)
            });
            Ok((acc, rej))
        };
        let target_in_burn = k >= length;
        if lambda == 1.0 && !filled && spec.input_sparsity > 0.0 {
            // the number of other stored items is binomial; average exactly
            let (mut acc, mut rej) = (0.0, 0.0);
            for (b, w) in binomial_weights(length - 1, keep) {
                let (a, r) = eval(b as f64)?;
                acc += w * a;
                rej += w * r.unwrap_or(0.0);
            }
            return Ok(Prediction { accuracy: Some(acc), rejection: spec.threshold.map(|_| rej) });
        }
        let target = lambda.powi(2 * k as i32);
        let post = geometric_energy(lambda, length as f64);
        let others = if target_in_burn { keep * post + burn - target } else { keep * (post - target) + burn };
        let (acc, rej) = eval(others.max(0.0))?;
        Ok(Prediction { accuracy: Some(acc), rejection: if target_in_burn { None } else { rej } })
    }

    /// Relative threshold in units of the distractor SD.
    fn theta_std(&self, m: &CodeMoments, terms: &LinearTerms, rel: f64) -> f64 {
        let dist = m.cross_var * terms.item_energy + m.noise_gain * terms.noise_energy;
        rel * m.components.sqrt() * m.self_mean / dist.sqrt()
    }
}

fn tracker_mode(spec: &ExperimentSpec, act: Activation) -> Option<TrackerMode> {
    let eligible = spec.scheme == Scheme::Hdc
        && spec.binding == BindingKind::Permutation
        && spec.contraction == 1.0
        && spec.noise == NoiseModel::None
        && spec.input_sparsity == 0.0
        && spec.code_sparsity == 0.0;
    if !eligible {
        return None;
    }
    match act {
        Activation::ClippedLinear { kappa } => Some(TrackerMode::ExactInteger { kappa }),
        Activation::Tanh { gamma } => Some(TrackerMode::DiscretizedSquash { gamma, half_bins: spec.tracker_bins }),
        Activation::Linear => None,
    }
}

fn lookbacks_max(spec: &ExperimentSpec, length: usize) -> usize {
    match &spec.lookbacks {
        // a filled network can be probed beyond the post-burn-in length
        Lookbacks::Fixed(ks) => ks.iter().copied().max().unwrap_or(0),
        l => l.at(length).into_iter().max().unwrap_or(0),
    }
}

/// Binomial(n, p) probabilities, skipping negligible tails.
fn binomial_weights(n: usize, p: f64) -> Vec<(usize, f64)> {
    if p <= 0.0 {
        return vec![(0, 1.0)];
    }
    if p >= 1.0 {
        return vec![(n, 1.0)];
    }
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let ln_choose = |k: usize| {
        libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
    };
    (0..=n)
        .map(|k| (k, (ln_choose(k) + k as f64 * lp + (n - k) as f64 * lq).exp()))
        .filter(|&(_, w)| w > 1e-14)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{accuracy_numeric, snr, SnrScenario};

    #[test]
    fn binomial_weights_sum_to_one() {
        let w = binomial_weights(99, 0.9);
        let total: f64 = w.iter().map(|x| x.1).sum();
        assert!((total - 1.0).abs() < 1e-10);
        let mean: f64 = w.iter().map(|&(k, p)| k as f64 * p).sum();
        assert!((mean - 89.1).abs() < 1e-8);
    }

    #[test]
    fn linear_hdc_matches_exact_model() {
        let spec = ExperimentSpec::new(Scheme::Hdc, BindingKind::Permutation, 1000, 27, vec![100], 1);
        let p = Predictor::new(&spec).unwrap().at(100, 99).unwrap().accuracy.unwrap();
        let s = snr(&SnrScenario::LinearLargeM { n_dim: 1000, length: 100 }).unwrap();
        let exact = accuracy_model(ScoreModel { snr: s, spread: (99.0f64 / 100.0).sqrt() }, 27, None, &Quadrature::default());
        assert!((p - exact).abs() < 1e-12);
        assert!((p - accuracy_numeric(s, 27, None)).abs() < 0.01);
    }
}
