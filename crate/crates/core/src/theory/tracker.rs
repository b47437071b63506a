//! Discretized distribution of one inner-product term z = Φ_{d,i} x_i in a
//! saturating network, evolved exactly through the input statistics.
//!
//! Every update adds y ∈ {−1, +1} with probability ½ (a distractor term or
//! an unrelated item, "diffuse") or adds +1 (the probed item itself,
//! "skew"), then applies the activation and maps back onto the bins.

use super::time_constant::uniform_variance;
use crate::error::{param, Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrackerMode {
    /// Clipped-linear network on the integers {−κ, …, κ}.
    ExactInteger { kappa: u32 },
    /// γ tanh(x/γ) on 2n+1 equal bins over [−γ, γ].
    DiscretizedSquash { gamma: f64, half_bins: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Start {
    /// x(0) = 0.
    Empty,
    /// Stationary state after infinitely many inputs.
    Filled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    Diffuse,
    Skew,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTracker {
    pub mode: TrackerMode,
    /// Probability per bin.
    pub p: Vec<f64>,
    values: Vec<f64>,
    down: Vec<usize>,
    up: Vec<usize>,
}

impl TrackerMode {
    fn validate(&self) -> Result<()> {
        match *self {
            TrackerMode::ExactInteger { kappa } if kappa >= 1 => Ok(()),
            TrackerMode::DiscretizedSquash { gamma, half_bins } if gamma > 0.0 && half_bins >= 1 => Ok(()),
            _ => Err(param(format!("invalid tracker mode {self:?}"))),
        }
    }

    fn layout(&self) -> (Vec<f64>, Vec<usize>, Vec<usize>) {
        match *self {
            TrackerMode::ExactInteger { kappa } => {
                let k = kappa as i64;
                let values: Vec<f64> = (-k..=k).map(|v| v as f64).collect();
                let last = values.len() - 1;
                let down = (0..=last).map(|j| j.saturating_sub(1)).collect();
                let up = (0..=last).map(|j| (j + 1).min(last)).collect();
                (values, down, up)
            }
            TrackerMode::DiscretizedSquash { gamma, half_bins } => {
                let n = half_bins as f64;
                let last = 2 * half_bins;
                let values: Vec<f64> = (0..=last).map(|j| gamma * (j as f64 / n - 1.0)).collect();
                let bin = |v: f64| {
                    let k = gamma * (v / gamma).tanh();
                    ((n / gamma) * (k + gamma)).round_ties_even().clamp(0.0, last as f64) as usize
                };
                let down = values.iter().map(|&v| bin(v - 1.0)).collect();
                let up = values.iter().map(|&v| bin(v + 1.0)).collect();
                (values, down, up)
            }
        }
    }
}

/// Point mass at zero (empty) or the stationary distribution (filled).
pub fn tracker_init(mode: TrackerMode, start: Start) -> Result<DistributionTracker> {
    mode.validate()?;
    let (values, down, up) = mode.layout();
    let bins = values.len();
    let mut t = DistributionTracker { mode, p: vec![0.0; bins], values, down, up };
    t.p[bins / 2] = 1.0;
    if start == Start::Filled {
        match mode {
            TrackerMode::ExactInteger { .. } => t.p.iter_mut().for_each(|p| *p = 1.0 / bins as f64),
            TrackerMode::DiscretizedSquash { .. } => t.relax(1e-10, 1_000_000)?,
        }
    }
    Ok(t)
}

pub fn tracker_step(tracker: &DistributionTracker, kind: StepKind) -> DistributionTracker {
    let mut t = tracker.clone();
    t.step(kind);
    t
}

pub fn tracker_moments(tracker: &DistributionTracker) -> (f64, f64) {
    tracker.moments()
}

impl DistributionTracker {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn step(&mut self, kind: StepKind) {
        let mut next = vec![0.0; self.p.len()];
        self.step_into(kind, &mut next);
        self.p = next;
    }

    fn step_into(&self, kind: StepKind, next: &mut [f64]) {
        next.iter_mut().for_each(|v| *v = 0.0);
        match kind {
            StepKind::Diffuse => {
                for (j, &pj) in self.p.iter().enumerate() {
                    if pj != 0.0 {
                        next[self.down[j]] += 0.5 * pj;
                        next[self.up[j]] += 0.5 * pj;
                    }
                }
            }
            StepKind::Skew => {
                for (j, &pj) in self.p.iter().enumerate() {
                    next[self.up[j]] += pj;
                }
            }
        }
    }

    /// Apply `count` diffusion steps.
    pub fn diffuse(&mut self, count: usize) {
        let mut next = vec![0.0; self.p.len()];
        for _ in 0..count {
            self.step_into(StepKind::Diffuse, &mut next);
            std::mem::swap(&mut self.p, &mut next);
        }
    }

    pub fn moments(&self) -> (f64, f64) {
        let mean: f64 = self.p.iter().zip(&self.values).map(|(p, v)| p * v).sum();
        let var: f64 = self.p.iter().zip(&self.values).map(|(p, v)| p * (v - mean) * (v - mean)).sum();
        (mean, var)
    }

    /// Fixed point of the diffusion, iterating the lazy chain ½(I + T) so
    /// periodic kernels still converge.
    fn relax(&mut self, tol: f64, max_iter: usize) -> Result<()> {
        let mut next = vec![0.0; self.p.len()];
        for _ in 0..max_iter {
            self.step_into(StepKind::Diffuse, &mut next);
            let mut change = 0.0;
            for (n, p) in next.iter_mut().zip(self.p.iter()) {
                *n = 0.5 * (*n + *p);
                change += (*n - *p).abs();
            }
            std::mem::swap(&mut self.p, &mut next);
            if change < tol {
                return Ok(());
            }
        }
        Err(param(format!("tracker equilibrium not reached in {max_iter} iterations")))
    }
}

/// Network whose scores the tracker predicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlinearSpec {
    pub mode: TrackerMode,
    pub n_dim: usize,
    /// Number of stored items, or `None` for the filled equilibrium.
    pub length: Option<usize>,
    /// Position of the probed item counted from the end, 1 = newest.
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlinearSnr {
    pub snr: f64,
    /// Hit SD over distractor SD.
    pub spread: f64,
    pub hit_mean: f64,
    pub hit_var: f64,
    pub distractor_var: f64,
}

fn finish(n_dim: usize, hit: &DistributionTracker, distractor_var: f64) -> NonlinearSnr {
    let (hit_mean, hit_var) = hit.moments();
    let sd = distractor_var.sqrt();
    NonlinearSnr {
        snr: (n_dim as f64).sqrt() * hit_mean / sd,
        spread: hit_var.sqrt() / sd,
        hit_mean,
        hit_var,
        distractor_var,
    }
}

/// SNR of a clipped or tanh network from tracked hit and distractor
/// distributions. The distractor term is tracked separately through pure
/// diffusion.
pub fn nonlinear_snr(spec: &NonlinearSpec) -> Result<NonlinearSnr> {
    let k = spec.position;
    if k == 0 {
        return Err(Error::InvalidLookback("positions start at 1".into()));
    }
    match spec.length {
        Some(m) => {
            if k > m {
                return Err(Error::InvalidLookback(format!("position {k} beyond {m} stored items")));
            }
            let mut hit = tracker_init(spec.mode, Start::Empty)?;
            hit.diffuse(m - k);
            hit.step(StepKind::Skew);
            hit.diffuse(k - 1);
            let mut dist = tracker_init(spec.mode, Start::Empty)?;
            dist.diffuse(m);
            Ok(finish(spec.n_dim, &hit, dist.moments().1))
        }
        None => Ok(filled_curve(spec.mode, spec.n_dim, k)?.pop().expect("k >= 1")),
    }
}

/// Filled-state SNR for positions 1..=max_position in one pass.
pub fn filled_curve(mode: TrackerMode, n_dim: usize, max_position: usize) -> Result<Vec<NonlinearSnr>> {
    let base = tracker_init(mode, Start::Filled)?;
    let distractor_var = match mode {
        TrackerMode::ExactInteger { kappa } => uniform_variance(kappa),
        TrackerMode::DiscretizedSquash { .. } => base.moments().1,
    };
    let mut hit = tracker_step(&base, StepKind::Skew);
    let mut out = Vec::with_capacity(max_position);
    for k in 1..=max_position {
        if k > 1 {
            hit.step(StepKind::Diffuse);
        }
        out.push(finish(n_dim, &hit, distractor_var));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_one_steps() {
        let m = TrackerMode::ExactInteger { kappa: 1 };
        let e = tracker_init(m, Start::Empty).unwrap();
        assert_eq!(e.p, vec![0.0, 1.0, 0.0]);
        assert_eq!(tracker_step(&e, StepKind::Diffuse).p, vec![0.5, 0.0, 0.5]);
        assert_eq!(tracker_step(&e, StepKind::Skew).p, vec![0.0, 0.0, 1.0]);
        let f = tracker_init(m, Start::Filled).unwrap();
        assert_eq!(f.p, vec![1.0 / 3.0; 3]);
        assert_eq!(tracker_step(&f, StepKind::Diffuse).p, f.p);
        let (mu, var) = f.moments();
        assert!(mu.abs() < 1e-15 && (var - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn squash_filled_is_symmetric() {
        let t = tracker_init(TrackerMode::DiscretizedSquash { gamma: 4.0, half_bins: 200 }, Start::Filled).unwrap();
        let (mu, _) = t.moments();
        assert!(mu.abs() < 1e-9);
        assert!((t.p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_late_position() {
        let spec = NonlinearSpec {
            mode: TrackerMode::ExactInteger { kappa: 2 },
            n_dim: 100,
            length: Some(3),
            position: 4,
        };
        assert!(matches!(nonlinear_snr(&spec), Err(Error::InvalidLookback(_))));
    }
}
