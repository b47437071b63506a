//! Binomial interval and test statistics.

use crate::theory::normal::sf;

/// z for a two-sided 95% interval.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `n` at normal quantile `z`.
pub fn wilson(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = z / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    // the exact endpoints at 0 and n are 0 and 1; avoid rounding past p
    ((center - half).clamp(0.0, p), (center + half).clamp(p, 1.0))
}

/// Two-proportion z statistic and its two-sided p-value.
pub fn two_proportion(x1: u64, n1: u64, x2: u64, n2: u64) -> (f64, f64) {
    let (p1, p2) = (x1 as f64 / n1 as f64, x2 as f64 / n2 as f64);
    let pooled = (x1 + x2) as f64 / (n1 + n2) as f64;
    let se = (pooled * (1.0 - pooled) * (1.0 / n1 as f64 + 1.0 / n2 as f64)).sqrt();
    if se == 0.0 {
        return if p1 == p2 { (0.0, 1.0) } else { (f64::INFINITY, 0.0) };
    }
    let z = (p1 - p2) / se;
    (z, 2.0 * sf(z.abs()))
}

/// Lag-1 autocorrelation of a 0/1 series.
pub fn lag1_autocorrelation(xs: &[bool]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let v: Vec<f64> = xs.iter().map(|&b| b as u8 as f64).collect();
    let mean = v.iter().sum::<f64>() / n as f64;
    let var: f64 = v.iter().map(|x| (x - mean) * (x - mean)).sum();
    if var == 0.0 {
        return 0.0;
    }
    let cov: f64 = v.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
    cov / var
}
