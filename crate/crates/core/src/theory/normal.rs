//! Standard normal density, distribution function and its logarithm.

use libm::erfc;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

pub fn pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Φ(x), evaluated through erfc so both tails keep full relative precision.
pub fn cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

/// Upper tail 1 − Φ(x).
pub fn sf(x: f64) -> f64 {
    0.5 * erfc(x * FRAC_1_SQRT_2)
}

/// ln Φ(x).
pub fn ln_cdf(x: f64) -> f64 {
    if x > -1.0 {
        (-sf(x)).ln_1p()
    } else if x > -37.0 {
        cdf(x).ln()
    } else {
        // asymptotic series, erfc underflows here
        let x2 = x * x;
        let series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2);
        -0.5 * x2 - (-x).ln() - 0.5 * (2.0 * PI).ln() + series.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert!((cdf(0.0) - 0.5).abs() < 1e-16);
        assert!((cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-15, "{:e}", cdf(1.0) - 0.841_344_746_068_542_9);
        assert!((cdf(std::f64::consts::SQRT_2) - 0.921_350_396_474_857_4).abs() < 1e-14);
        assert!((sf(5.0) - 2.866_515_718_791_933e-7).abs() < 1e-20);
    }

    #[test]
    fn ln_cdf_is_continuous_across_branches() {
        for &b in &[-1.0, -37.0] {
            let lo = ln_cdf(b - 1e-9);
            let hi = ln_cdf(b + 1e-9);
            assert!((lo - hi).abs() < 1e-6 * lo.abs().max(1.0), "{b}: {lo} {hi}");
        }
        // log of tiny tail, ln Φ(−10) ≈ −53.231285
        assert!((ln_cdf(-10.0) + 53.231_285_150_512_5).abs() < 1e-8);
        assert!((ln_cdf(-40.0) + 804.608_442_013_754).abs() < 1e-6);
    }
}
