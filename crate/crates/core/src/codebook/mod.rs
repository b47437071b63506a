//! Randomized codebooks and the binding operators that turn each VSA scheme
//! into a recurrent update `x <- W x + Φ a`.

mod binding;
mod unitary;

pub(crate) mod binding_wire {
    pub(crate) use super::binding::{Payload, Wire};
}

pub use binding::{bind, make_binding, make_binding_for, BindingKind, BindingOperator, Spectrum};

use crate::error::{dim, param, Result};
use crate::seed;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// Symbol distribution of a codebook.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Bipolar ±1 entries.
    Hdc,
    /// Gaussian entries with variance 1/N.
    Hrr,
    /// Unit phasors, stored as `[re_0..re_{N/2} | im_0..im_{N/2}]`.
    Fhrr,
    /// Gaussian entries with variance 1/N, paired with a random orthogonal W.
    RandomUnitary,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Hdc => "hdc",
            Scheme::Hrr => "hrr",
            Scheme::Fhrr => "fhrr",
            Scheme::RandomUnitary => "random_unitary",
        }
    }
}

/// N×D symbol matrix, column-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Codebook {
    pub scheme: Scheme,
    pub n_dim: usize,
    pub n_tokens: usize,
    pub sparsity: f64,
    pub seed: u64,
    entries: Vec<f64>,
}

impl Codebook {
    /// Build from raw column-major entries.
    pub fn from_entries(
        scheme: Scheme,
        n_dim: usize,
        n_tokens: usize,
        sparsity: f64,
        seed: u64,
        entries: Vec<f64>,
    ) -> Result<Self> {
        if entries.len() != n_dim * n_tokens {
            return Err(dim(format!(
                "expected {} entries, got {}",
                n_dim * n_tokens,
                entries.len()
            )));
        }
        Ok(Codebook { scheme, n_dim, n_tokens, sparsity, seed, entries })
    }

    pub fn column(&self, d: usize) -> &[f64] {
        &self.entries[d * self.n_dim..(d + 1) * self.n_dim]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n_dim)
    }
}

/// Draw a codebook. Identical arguments give a bit-identical result.
///
/// Sparsification draws from a separate stream, so the surviving entries are
/// the same for every sparsity at a fixed seed. FHRR zeroes whole complex
/// elements.
pub fn generate_codebook(
    scheme: Scheme,
    n_dim: usize,
    n_tokens: usize,
    sparsity: f64,
    seed: u64,
) -> Result<Codebook> {
    if n_dim < 2 {
        return Err(dim(format!("n_dim must be at least 2, got {n_dim}")));
    }
    if scheme == Scheme::Fhrr && !n_dim.is_multiple_of(2) {
        return Err(dim(format!("FHRR needs an even n_dim, got {n_dim}")));
    }
    if n_tokens < 1 {
        return Err(param("n_tokens must be positive"));
    }
    if !(0.0..=1.0).contains(&sparsity) {
        return Err(param(format!("sparsity {sparsity} outside [0, 1]")));
    }
    let mut rng = seed::rng(seed::derive(seed, seed::stream::CODEBOOK));
    let mut entries = vec![0.0; n_dim * n_tokens];
    match scheme {
        Scheme::Hdc => {
            for e in entries.iter_mut() {
                *e = if rng.random::<bool>() { 1.0 } else { -1.0 };
            }
        }
        Scheme::Hrr | Scheme::RandomUnitary => {
            let normal = Normal::new(0.0, 1.0 / (n_dim as f64).sqrt()).expect("finite sd");
            for e in entries.iter_mut() {
                *e = normal.sample(&mut rng);
            }
        }
        Scheme::Fhrr => {
            let half = n_dim / 2;
            for col in entries.chunks_exact_mut(n_dim) {
                for j in 0..half {
                    let phase = rng.random::<f64>() * std::f64::consts::TAU;
                    col[j] = phase.cos();
                    col[j + half] = phase.sin();
                }
            }
        }
    }
    if sparsity > 0.0 {
        let mut mask = seed::rng(seed::derive(seed, seed::stream::SPARSITY));
        if scheme == Scheme::Fhrr {
            let half = n_dim / 2;
            for col in entries.chunks_exact_mut(n_dim) {
                for j in 0..half {
                    if mask.random::<f64>() < sparsity {
                        col[j] = 0.0;
                        col[j + half] = 0.0;
                    }
                }
            }
        } else {
            for e in entries.iter_mut() {
                if mask.random::<f64>() < sparsity {
                    *e = 0.0;
                }
            }
        }
    }
    Ok(Codebook { scheme, n_dim, n_tokens, sparsity, seed, entries })
}

/// Similarity between two vectors of a scheme.
///
/// With the split real/imaginary layout, Re(aᵀb*) for FHRR is the plain real
/// dot product, so every scheme reduces to the same sum.
pub fn similarity(scheme: Scheme, a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(dim(format!("lengths differ: {} vs {}", a.len(), b.len())));
    }
    if scheme == Scheme::Fhrr && !a.len().is_multiple_of(2) {
        return Err(dim("FHRR vectors need even length"));
    }
    Ok(dot(a, b))
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    // four accumulators keep the loop vectorizable
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for i in 0..chunks {
        let k = 4 * i;
        acc[0] += a[k] * b[k];
        acc[1] += a[k + 1] * b[k + 1];
        acc[2] += a[k + 2] * b[k + 2];
        acc[3] += a[k + 3] * b[k + 3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for k in 4 * chunks..a.len() {
        s += a[k] * b[k];
    }
    s
}
