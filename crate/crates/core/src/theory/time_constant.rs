//! Buffer time constants and storage cost.

use crate::error::{param, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum TimeConstant {
    /// Contraction λ of a decay network.
    Lambda(f64),
    /// Clip bound κ of a clipped network.
    Kappa(u32),
    /// Bound v on the equilibrium variance, mapped to λ = √(1 − 1/v).
    VarianceBound(f64),
}

/// e-folding time of the signal decay.
pub fn time_constant(kind: TimeConstant) -> Result<f64> {
    match kind {
        TimeConstant::Lambda(l) => {
            if !(l > 0.0 && l < 1.0) {
                return Err(param(format!("lambda {l} outside (0, 1)")));
            }
            Ok(-1.0 / l.ln())
        }
        TimeConstant::Kappa(k) => {
            if k < 1 {
                return Err(param("kappa must be at least 1"));
            }
            let k = k as f64;
            let arg = 1.0 - 3.0 / (k * (k + 1.0));
            if arg <= 0.0 {
                return Err(param(format!("kappa {k} gives a non-positive logarithm argument {arg}")));
            }
            Ok(-2.0 / arg.ln())
        }
        TimeConstant::VarianceBound(v) => {
            if !(v > 1.0) || !v.is_finite() {
                return Err(param(format!("variance bound {v} must exceed 1")));
            }
            time_constant(TimeConstant::Lambda((1.0 - 1.0 / v).sqrt()))
        }
    }
}

/// Contraction whose filled variance 1/(1−λ²) equals the clipped network's
/// uniform variance ((2κ+1)²−1)/12.
pub fn matched_contraction(kappa: u32) -> Result<f64> {
    let v = uniform_variance(kappa);
    if v <= 1.0 {
        return Err(param(format!("kappa {kappa} has variance {v} <= 1")));
    }
    Ok((1.0 - 1.0 / v).sqrt())
}

/// Variance of the uniform distribution on {−κ, …, κ}.
pub fn uniform_variance(kappa: u32) -> f64 {
    let w = 2.0 * kappa as f64 + 1.0;
    (w * w - 1.0) / 12.0
}

/// N log₂(2κ+1).
pub fn storage_bits(n_dim: usize, kappa: u32) -> Result<f64> {
    if kappa < 1 {
        return Err(param("kappa must be at least 1"));
    }
    Ok(n_dim as f64 * (2.0 * kappa as f64 + 1.0).log2())
}
