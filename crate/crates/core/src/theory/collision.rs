//! Accuracy and information of a single stored item (M = 1), where the
//! only errors come from codewords identical to the stored one.

use super::info::item_info;
use crate::error::{param, Result};
use serde::{Deserialize, Serialize};

/// Number of independent draws that can collide with the stored codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollisionCount {
    /// The D−1 other codewords.
    #[default]
    Distractors,
    /// All D codewords, as a binomial with D trials.
    AllTokens,
}

/// Distribution p_c of the number of colliders.
fn collider_pmf(n_dim: usize, n_tokens: usize, count: CollisionCount) -> Result<Vec<f64>> {
    if n_dim == 0 || n_tokens == 0 {
        return Err(param("n_dim and n_tokens must be positive"));
    }
    let trials = match count {
        CollisionCount::Distractors => n_tokens - 1,
        CollisionCount::AllTokens => n_tokens,
    } as f64;
    let q = (-(n_dim as f64) * std::f64::consts::LN_2).exp();
    let mean = trials * q;
    let cap = (mean + 50.0 * mean.sqrt() + 50.0).min(trials) as usize;
    let mut pmf = Vec::with_capacity(cap + 1);
    if n_dim <= 30 {
        // binomial by the ratio recurrence p_{c+1} = p_c (n−c)/(c+1) · q/(1−q)
        let odds = q / (1.0 - q);
        let mut p = (trials * (-q).ln_1p()).exp();
        for c in 0..=cap {
            pmf.push(p);
            p *= (trials - c as f64) / (c as f64 + 1.0) * odds;
        }
    } else {
        // Poisson limit of the binomial
        let mut p = (-mean).exp();
        for c in 0..=cap {
            pmf.push(p);
            p *= mean / (c as f64 + 1.0);
        }
    }
    Ok(pmf)
}

/// Σ_c p_c/(c+1): a tie among c+1 identical codewords is broken uniformly.
pub fn collision_accuracy(n_dim: usize, n_tokens: usize, count: CollisionCount) -> Result<f64> {
    Ok(collider_pmf(n_dim, n_tokens, count)?.iter().enumerate().map(|(c, p)| p / (c as f64 + 1.0)).sum())
}

/// Closed form of E[1/(1+c)] for c ~ Binomial(n, q).
pub fn collision_accuracy_closed(n_dim: usize, n_tokens: usize, count: CollisionCount) -> f64 {
    let n = match count {
        CollisionCount::Distractors => n_tokens.saturating_sub(1),
        CollisionCount::AllTokens => n_tokens,
    } as f64;
    let q = (-(n_dim as f64) * std::f64::consts::LN_2).exp();
    // (1 − (1−q)^{n+1}) / ((n+1) q), with expm1/ln1p for small q
    -((n + 1.0) * (-q).ln_1p()).exp_m1() / ((n + 1.0) * q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionInfo {
    pub bits: f64,
    pub bits_per_neuron: f64,
}

/// Σ_c p_c log₂(p_c D/(c+1)) and its value per neuron.
pub fn collision_info(n_dim: usize, n_tokens: usize, count: CollisionCount) -> Result<CollisionInfo> {
    let d = n_tokens as f64;
    let bits: f64 = collider_pmf(n_dim, n_tokens, count)?
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0.0)
        .map(|(c, &p)| p * (p * d / (c as f64 + 1.0)).log2())
        .sum();
    Ok(CollisionInfo { bits, bits_per_neuron: bits / n_dim as f64 })
}

/// Information by the uniform-error formula applied to the collision accuracy.
pub fn collision_item_info(n_dim: usize, n_tokens: usize, count: CollisionCount) -> Result<f64> {
    Ok(item_info(collision_accuracy(n_dim, n_tokens, count)?, n_tokens))
}
