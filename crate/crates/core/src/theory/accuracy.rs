//! Retrieval accuracy under the Gaussian score model.
//!
//! Scores are measured in units of the distractor standard deviation:
//! distractors are N(0, 1) and the hit score is N(s, r²). The probability
//! that the hit beats all D−1 distractors (and clears a threshold θ) is
//!
//! p = ∫ φ(u) Φ(s + r u)^{D−1} du   over u > (θ − s)/r.
//!
//! With r = 1 this is the textbook integral with equal variances.

use super::normal::{cdf, ln_cdf, pdf, sf};
use crate::error::{param, Result};
use serde::{Deserialize, Serialize};

/// Hit/distractor score distribution in distractor-SD units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreModel {
    /// Mean of the hit score.
    pub snr: f64,
    /// SD of the hit score relative to the distractor SD.
    pub spread: f64,
}

impl ScoreModel {
    pub fn equal_variance(snr: f64) -> Self {
        ScoreModel { snr, spread: 1.0 }
    }
}

/// Midpoint-split Gauss–Legendre rule over a window of ±`half_width`
/// standard deviations of the hit score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    pub bins: usize,
    pub half_width: f64,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { bins: 2000, half_width: 8.0 }
    }
}

impl Quadrature {
    pub fn doubled(self) -> Self {
        Quadrature { bins: 2 * self.bins, ..self }
    }

    fn integrate(&self, model: ScoreModel, exponent: f64, lower: f64) -> f64 {
        let w = self.half_width;
        let a = lower.max(-w);
        if a >= w {
            return 0.0;
        }
        if exponent == 0.0 {
            return cdf(w) - cdf(a);
        }
        let h = (w - a) / self.bins as f64;
        let offset = 0.5 * h / 3f64.sqrt();
        let mut total = 0.0;
        for i in 0..self.bins {
            let mid = a + (i as f64 + 0.5) * h;
            for u in [mid - offset, mid + offset] {
                let log_f = exponent * ln_cdf(model.snr + model.spread * u);
                if log_f > -745.0 {
                    total += pdf(u) * log_f.exp();
                }
            }
        }
        0.5 * h * total
    }
}

/// Classification (θ = None) or detection accuracy for a score model.
pub fn accuracy_model(model: ScoreModel, n_tokens: usize, threshold: Option<f64>, quad: &Quadrature) -> f64 {
    let exponent = n_tokens.saturating_sub(1) as f64;
    let theta = threshold.unwrap_or(f64::NEG_INFINITY);
    if model.spread <= 0.0 {
        if model.snr < theta {
            return 0.0;
        }
        return (exponent * ln_cdf(model.snr)).exp();
    }
    let lower = if theta == f64::NEG_INFINITY { f64::NEG_INFINITY } else { (theta - model.snr) / model.spread };
    quad.integrate(model, exponent, lower).clamp(0.0, 1.0)
}

/// ∫ φ(h) Φ(h + s)^{D−1} dh, optionally restricted to hits above θ.
pub fn accuracy_numeric(snr: f64, n_tokens: usize, threshold: Option<f64>) -> f64 {
    accuracy_model(ScoreModel::equal_variance(snr), n_tokens, threshold, &Quadrature::default())
}

/// The D = 2 closed form Φ(s/√2).
pub fn accuracy_closed_d2(snr: f64) -> f64 {
    cdf(snr / std::f64::consts::SQRT_2)
}

/// Default shape parameter of the tightened Chernoff-style bound.
pub const CHANG_BETA: f64 = 1.08;

/// α paired with β so the bound B(x) = α e^{−βx²} touches erfc.
pub fn chang_alpha(beta: f64) -> f64 {
    (2.0 * std::f64::consts::E / std::f64::consts::PI).sqrt() * (beta - 1.0).sqrt() / beta
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Approximation {
    /// Factorized: Φ(s/√2)^{D−1}.
    Fa,
    /// Factorized with the Chernoff-Rubin bound on erfc.
    FaCr,
    /// FA_CR linearized with the leading term of the binomial expansion.
    FaCrLee,
    /// As FA_CR_LEE with the bound α e^{−βx²}, β = 1.08.
    Chang,
}

pub fn accuracy_approx(snr: f64, n_tokens: usize, method: Approximation) -> f64 {
    let dm1 = n_tokens.saturating_sub(1) as f64;
    let tail = (-snr * snr / 4.0).exp();
    match method {
        Approximation::Fa => cdf(snr / std::f64::consts::SQRT_2).powf(dm1),
        Approximation::FaCr => (1.0 - 0.5 * tail).powf(dm1),
        Approximation::FaCrLee => (1.0 - 0.5 * dm1 * tail).clamp(0.0, 1.0),
        Approximation::Chang => {
            let b = CHANG_BETA;
            (1.0 - 0.5 * dm1 * chang_alpha(b) * (-b * snr * snr / 4.0).exp()).clamp(0.0, 1.0)
        }
    }
}

/// Plate's high-fidelity estimate 1 − D e^{−s²/8}, clamped.
pub fn accuracy_plate(snr: f64, n_tokens: usize) -> f64 {
    (1.0 - n_tokens as f64 * (-snr * snr / 8.0).exp()).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnrRule {
    FaCrLee,
    Chang,
    Plate,
}

/// SNR² needed for error rate ε.
pub fn required_snr_squared(n_tokens: usize, epsilon: f64, rule: SnrRule) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(param(format!("error rate {epsilon} outside (0, 1)")));
    }
    if n_tokens < 2 {
        return Err(param("n_tokens must be at least 2"));
    }
    let d = n_tokens as f64;
    let lee = (d - 1.0).ln() - (2.0 * epsilon).ln();
    Ok(match rule {
        SnrRule::FaCrLee => 4.0 * lee,
        SnrRule::Chang => 4.0 / CHANG_BETA * (lee + chang_alpha(CHANG_BETA).ln()),
        SnrRule::Plate => 8.0 * (d / epsilon).ln(),
    })
}

/// Smallest s² with accuracy_numeric(s, D) ≥ 1 − ε, by bisection.
pub fn invert_accuracy(n_tokens: usize, epsilon: f64, quad: &Quadrature) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0 - 1.0 / n_tokens as f64) {
        return Err(param(format!("error rate {epsilon} not reachable above chance")));
    }
    let target = 1.0 - epsilon;
    let p = |s: f64| accuracy_model(ScoreModel::equal_variance(s), n_tokens, None, quad);
    let (mut lo, mut hi) = (0.0, 1.0);
    while p(hi) < target {
        hi *= 2.0;
        if hi > 1e3 {
            return Err(param("accuracy target not reached"));
        }
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if p(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.25 * (lo + hi) * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AllCorrectConvention {
    /// Hits above θ for the M stored tokens and distractors below θ for the other D−M.
    Plate,
    /// Per-item accuracy raised to the M-th power.
    Ours,
}

/// Probability of reading all M tokens of a set correctly.
pub fn all_correct_probability(
    model: ScoreModel,
    n_tokens: usize,
    items: usize,
    threshold: Option<f64>,
    convention: AllCorrectConvention,
    quad: &Quadrature,
) -> Result<f64> {
    let m = items as i32;
    match convention {
        AllCorrectConvention::Plate => {
            if items > n_tokens {
                return Err(param(format!("{items} items cannot be drawn without replacement from {n_tokens}")));
            }
            let theta = threshold.unwrap_or(f64::NEG_INFINITY);
            let hit = if model.spread > 0.0 {
                sf((theta - model.snr) / model.spread)
            } else if model.snr >= theta {
                1.0
            } else {
                0.0
            };
            let reject = cdf(theta);
            Ok(hit.powi(m) * reject.powi((n_tokens - items) as i32))
        }
        AllCorrectConvention::Ours => Ok(accuracy_model(model, n_tokens, threshold, quad).powi(m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chance_and_d2() {
        for d in [2usize, 8, 27, 256] {
            assert!((accuracy_numeric(0.0, d, None) - 1.0 / d as f64).abs() < 1e-6);
        }
        let mut s = 0.0;
        while s <= 8.0 {
            assert!((accuracy_numeric(s, 2, None) - accuracy_closed_d2(s)).abs() < 1e-6, "s={s}");
            s += 0.05;
        }
        assert!((accuracy_closed_d2(2.0) - 0.921_350_396_474_857_4).abs() < 1e-12, "{}", accuracy_closed_d2(2.0));
    }

    #[test]
    fn doubling_resolution_is_stable() {
        let q = Quadrature::default();
        for &(s, d) in &[(1.0, 27usize), (4.0, 1024), (6.3, 8), (0.3, 256)] {
            let a = accuracy_model(ScoreModel::equal_variance(s), d, None, &q);
            let b = accuracy_model(ScoreModel::equal_variance(s), d, None, &q.doubled());
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn lee_example_and_ratio() {
        let s2 = required_snr_squared(27, 0.01, SnrRule::FaCrLee).unwrap();
        assert!((s2 - 28.68).abs() < 0.01, "{s2}");
        let ratio = required_snr_squared(4096, 1e-3, SnrRule::Plate).unwrap()
            / required_snr_squared(4096, 1e-3, SnrRule::FaCrLee).unwrap();
        assert!((1.8..=2.2).contains(&ratio), "{ratio}");
        assert!(required_snr_squared(27, 1.0, SnrRule::Chang).is_err());
    }

    #[test]
    fn lee_clamps_at_zero() {
        assert_eq!(accuracy_approx(0.0, 27, Approximation::FaCrLee), 0.0);
        assert_eq!(accuracy_approx(1.3, 2, Approximation::Fa), accuracy_closed_d2(1.3));
    }
}
