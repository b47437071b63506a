//! Mutual information between stored and retrieved tokens, and grid
//! searches for the parameters that maximize it.

use super::accuracy::{accuracy_model, Quadrature, ScoreModel};
use super::snr::{score_model, SnrScenario};
use super::tracker::{filled_curve, nonlinear_snr, NonlinearSpec, TrackerMode};
use crate::error::{param, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

fn xlog2(x: f64, arg: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * arg.log2()
    }
}

/// Bits per retrieved token for accuracy p among D tokens, errors spread
/// uniformly over the other D−1.
pub fn item_info(p_corr: f64, n_tokens: usize) -> f64 {
    let d = n_tokens as f64;
    if n_tokens < 2 {
        return 0.0;
    }
    let p = p_corr.clamp(0.0, 1.0);
    (xlog2(p, p * d) + xlog2(1.0 - p, d * (1.0 - p) / (d - 1.0))).max(0.0)
}

pub fn total_info(p_corr: &[f64], n_tokens: usize) -> f64 {
    p_corr.iter().map(|&p| item_info(p, n_tokens)).sum()
}

/// Parameter swept by a capacity search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Objective {
    /// Sequence length M of a linear network without recency. Uses
    /// s = √(N/M), or the exact finite-M model when `v_ratio` is given.
    Length { v_ratio: Option<f64> },
    /// Contraction λ of a decay network storing `length` items, or the
    /// filled equilibrium when `length` is None.
    Contraction { length: Option<usize> },
    /// Clip bound κ.
    ClipBound { length: Option<usize> },
    /// Gain γ of a tanh network, tracked on 2n+1 bins.
    Gain { length: Option<usize>, half_bins: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    pub grid: Vec<f64>,
    /// I_total/N at each grid point.
    pub per_neuron: Vec<f64>,
    pub best_index: usize,
    pub best_param: f64,
    /// Accuracy by lookback (0 = newest) at the best grid point.
    pub p_corr: Vec<f64>,
    pub item_info: Vec<f64>,
    pub i_total: f64,
    pub i_per_neuron: f64,
}

/// Information retrieved from one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoCurve {
    pub p_corr: Vec<f64>,
    pub item_info: Vec<f64>,
    pub i_total: f64,
}

/// Settings for summing an unbounded lookback range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailRule {
    /// Stop once the estimated remaining tail is below this fraction of the sum.
    pub rel_tol: f64,
    pub max_lookback: usize,
}

impl Default for TailRule {
    fn default() -> Self {
        TailRule { rel_tol: 1e-6, max_lookback: 1_000_000 }
    }
}

fn sum_curve(n_tokens: usize, quad: &Quadrature, tail: TailRule, mut model: impl FnMut(usize) -> Result<Option<ScoreModel>>) -> Result<InfoCurve> {
    let mut p_corr = Vec::new();
    let mut infos = Vec::new();
    let mut total = 0.0;
    for k in 0..tail.max_lookback {
        let Some(m) = model(k)? else { break };
        let p = accuracy_model(m, n_tokens, None, quad);
        let i = item_info(p, n_tokens);
        total += i;
        if let Some(&prev) = infos.last() {
            let prev: f64 = prev;
            let ratio = if prev > 0.0 { i / prev } else { 0.0 };
            let rest = if ratio < 1.0 { i * ratio / (1.0 - ratio) } else { f64::INFINITY };
            p_corr.push(p);
            infos.push(i);
            if i == 0.0 || rest < tail.rel_tol * total {
                break;
            }
        } else {
            p_corr.push(p);
            infos.push(i);
        }
    }
    Ok(InfoCurve { p_corr, item_info: infos, i_total: total })
}

/// Accuracy and information over all lookbacks for one objective value.
pub fn info_curve(objective: &Objective, value: f64, n_dim: usize, n_tokens: usize, quad: &Quadrature, tail: TailRule) -> Result<InfoCurve> {
    let finite = |length: Option<usize>| length.unwrap_or(usize::MAX);
    match *objective {
        Objective::Length { v_ratio } => {
            let m = value.round() as usize;
            let scenario = match v_ratio {
                None => SnrScenario::LinearLargeM { n_dim, length: m },
                Some(v_ratio) => SnrScenario::LinearExact { n_dim, length: m, v_ratio },
            };
            let model = score_model(&scenario)?;
            let p = accuracy_model(model, n_tokens, None, quad);
            let i = item_info(p, n_tokens);
            Ok(InfoCurve { p_corr: vec![p; m], item_info: vec![i; m], i_total: i * m as f64 })
        }
        Objective::Contraction { length } => {
            let stop = finite(length);
            sum_curve(n_tokens, quad, tail, |k| {
                if k >= stop {
                    return Ok(None);
                }
                let sc = match length {
                    Some(m) => SnrScenario::DecayFinite { n_dim, length: m, contraction: value, lookback: k },
                    None => SnrScenario::DecayFilled { n_dim, contraction: value, lookback: k },
                };
                score_model(&sc).map(Some)
            })
        }
        Objective::ClipBound { length } | Objective::Gain { length, .. } => {
            let mode = match *objective {
                Objective::ClipBound { .. } => TrackerMode::ExactInteger { kappa: value.round() as u32 },
                Objective::Gain { half_bins, .. } => TrackerMode::DiscretizedSquash { gamma: value, half_bins },
                _ => unreachable!(),
            };
            match length {
                Some(m) => sum_curve(n_tokens, quad, tail, |k| {
                    if k >= m {
                        return Ok(None);
                    }
                    let r = nonlinear_snr(&NonlinearSpec { mode, n_dim, length: Some(m), position: k + 1 })?;
                    Ok(Some(ScoreModel { snr: r.snr, spread: r.spread }))
                }),
                None => {
                    // grow the precomputed filled curve in chunks
                    let mut cache: Vec<ScoreModel> = Vec::new();
                    sum_curve(n_tokens, quad, tail, |k| {
                        if k >= cache.len() {
                            let want = (2 * cache.len()).max(256);
                            cache = filled_curve(mode, n_dim, want)?
                                .into_iter()
                                .map(|r| ScoreModel { snr: r.snr, spread: r.spread })
                                .collect();
                        }
                        Ok(Some(cache[k]))
                    })
                }
            }
        }
    }
}

/// Exhaustive grid search for the value maximizing I_total/N.
pub fn capacity_search(objective: &Objective, n_dim: usize, n_tokens: usize, grid: &[f64], quad: &Quadrature) -> Result<CapacityResult> {
    if grid.is_empty() {
        return Err(param("capacity search needs a non-empty grid"));
    }
    let tail = TailRule::default();
    let curves: Vec<InfoCurve> = grid
        .par_iter()
        .map(|&v| info_curve(objective, v, n_dim, n_tokens, quad, tail))
        .collect::<Result<_>>()?;
    let per_neuron: Vec<f64> = curves.iter().map(|c| c.i_total / n_dim as f64).collect();
    let mut best_index = 0;
    for (i, &v) in per_neuron.iter().enumerate() {
        if v > per_neuron[best_index] {
            best_index = i;
        }
    }
    let best = curves[best_index].clone();
    Ok(CapacityResult {
        grid: grid.to_vec(),
        best_param: grid[best_index],
        best_index,
        i_per_neuron: per_neuron[best_index],
        per_neuron,
        i_total: best.i_total,
        p_corr: best.p_corr,
        item_info: best.item_info,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn item_info_endpoints() {
        assert!((item_info(1.0, 27) - 27f64.log2()).abs() < 1e-12);
        assert!(item_info(1.0 / 27.0, 27).abs() < 1e-12);
        assert!(item_info(0.5, 2).abs() < 1e-12);
        assert_eq!(total_info(&[1.0; 5], 8), 15.0);
        assert_eq!(total_info(&[0.125; 5], 8), 0.0);
    }

    #[test]
    fn singleton_grid() {
        let r = capacity_search(&Objective::Length { v_ratio: None }, 1000, 27, &[100.0], &Quadrature::default()).unwrap();
        assert_eq!(r.best_index, 0);
        assert_eq!(r.best_param, 100.0);
        assert_eq!(r.p_corr.len(), 100);
        assert!(capacity_search(&Objective::Length { v_ratio: None }, 1000, 27, &[], &Quadrature::default()).is_err());
    }
}
