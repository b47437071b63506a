//! Theory-versus-simulation check of harness rows.

use super::run::SweepResult;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareOptions {
    /// Tolerance in binomial standard errors.
    pub sigmas: f64,
    /// Fraction of rows that must pass for the suite to pass.
    pub min_pass_fraction: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { sigmas: 3.0, min_pass_fraction: 0.95 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowCheck {
    pub row: usize,
    pub label: String,
    pub length: usize,
    pub lookback: usize,
    pub empirical: f64,
    pub theory: f64,
    pub samples: u64,
    pub z: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub sigmas: f64,
    pub checks: Vec<RowCheck>,
    pub passed: usize,
    /// Rows skipped for lack of a theory value or of samples.
    pub skipped: usize,
    pub pass_fraction: f64,
    pub pass: bool,
}

/// z of an observed proportion against a predicted one, with the binomial
/// standard error at the prediction. |z| ≤ z₀ is the same as the prediction
/// lying inside the Wilson interval at z₀.
pub fn score_z(successes: u64, n: u64, predicted: f64) -> f64 {
    let p = successes as f64 / n as f64;
    let se = (predicted * (1.0 - predicted) / n as f64).sqrt();
    if se == 0.0 {
        return if p == predicted { 0.0 } else { f64::INFINITY.copysign(p - predicted) };
    }
    (p - predicted) / se
}

pub fn compare(result: &SweepResult, options: CompareOptions) -> CompareReport {
    let mut checks = Vec::new();
    let mut skipped = 0;
    for (i, r) in result.rows.iter().enumerate() {
        let Some(theory) = r.theory else {
            skipped += 1;
            continue;
        };
        if r.hit_samples == 0 {
            skipped += 1;
            continue;
        }
        let z = score_z(r.hit_correct, r.hit_samples, theory);
        checks.push(RowCheck {
            row: i,
            label: r.label.clone(),
            length: r.length,
            lookback: r.lookback,
            empirical: r.accuracy,
            theory,
            samples: r.hit_samples,
            z,
            pass: z.abs() <= options.sigmas,
        });
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let pass_fraction = if checks.is_empty() { 0.0 } else { passed as f64 / checks.len() as f64 };
    CompareReport {
        sigmas: options.sigmas,
        pass: !checks.is_empty() && pass_fraction >= options.min_pass_fraction,
        checks,
        passed,
        skipped,
        pass_fraction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::stats::wilson;

    #[test]
    fn z_agrees_with_wilson() {
        let (lo, hi) = wilson(412, 500, 3.0);
        for &t in &[lo - 1e-6, lo + 1e-6, 0.82, hi - 1e-6, hi + 1e-6] {
            let inside = t >= lo && t <= hi;
            assert_eq!(score_z(412, 500, t).abs() <= 3.0, inside, "t={t}");
        }
    }
}
