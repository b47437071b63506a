//! Distributed shift register: a constructed code that stores log₂D sign
//! bits per token in consecutive blocks without superposition.

use crate::error::{param, Error, Result};
use crate::memory::classify;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsrCode {
    pub n_dim: usize,
    pub n_tokens: usize,
    pub block_bits: usize,
    /// Number of whole blocks in the ring.
    pub capacity_slots: usize,
}

/// Register contents plus the number of tokens written so far.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DsrState {
    pub x: Vec<f64>,
    pub written: usize,
}

impl DsrCode {
    pub fn new(n_dim: usize, n_tokens: usize) -> Result<Self> {
        if n_tokens < 2 || !n_tokens.is_power_of_two() {
            return Err(param(format!("DSR needs D to be a power of two, got {n_tokens}")));
        }
        let block_bits = n_tokens.trailing_zeros() as usize;
        if block_bits > n_dim {
            return Err(param(format!("block of {block_bits} bits does not fit in N = {n_dim}")));
        }
        Ok(DsrCode { n_dim, n_tokens, block_bits, capacity_slots: n_dim / block_bits })
    }

    fn ring(&self) -> usize {
        self.capacity_slots * self.block_bits
    }

    /// Sign pattern of token d, most significant bit first.
    pub fn block(&self, d: usize) -> Vec<f64> {
        (0..self.block_bits)
            .map(|i| if (d >> (self.block_bits - 1 - i)) & 1 == 1 { 1.0 } else { -1.0 })
            .collect()
    }

    /// Full codeword: the block followed by zeros.
    pub fn codeword(&self, d: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.n_dim];
        v[..self.block_bits].copy_from_slice(&self.block(d));
        v
    }
}

/// Shift the ring by one block and write each token into the front block.
pub fn dsr_encode(code: &DsrCode, sequence: &[usize]) -> Result<DsrState> {
    let b = code.block_bits;
    let ring = code.ring();
    let mut x = vec![0.0; code.n_dim];
    for &d in sequence {
        if d >= code.n_tokens {
            return Err(param(format!("token {d} outside [0, {})", code.n_tokens)));
        }
        x[..ring].rotate_right(b);
        x[..b].copy_from_slice(&code.block(d));
    }
    Ok(DsrState { x, written: sequence.len() })
}

/// Nearest codeword by sign agreement on the block written `lookback` steps
/// ago (0 = newest), after flipping each sign with probability `p_flip`.
pub fn dsr_decode<R: Rng>(code: &DsrCode, state: &DsrState, lookback: usize, p_flip: f64, rng: &mut R) -> Result<usize> {
    if !(0.0..=0.5).contains(&p_flip) {
        return Err(param(format!("bit-flip probability {p_flip} outside [0, 0.5]")));
    }
    if lookback >= state.written.min(code.capacity_slots) {
        return Err(Error::UnretrievableLookback(format!(
            "block {lookback} is not held by a register with {} slots after {} writes",
            code.capacity_slots, state.written
        )));
    }
    let b = code.block_bits;
    let mut block = state.x[lookback * b..(lookback + 1) * b].to_vec();
    for v in block.iter_mut() {
        if rng.random::<f64>() < p_flip {
            *v = -*v;
        }
    }
    let scores: Vec<f64> = (0..code.n_tokens)
        .map(|d| code.block(d).iter().zip(&block).filter(|(c, v)| c.signum() == v.signum()).count() as f64)
        .collect();
    Ok(classify(&scores, rng))
}

/// Per-token accuracy under independent flips. Every sign pattern is a
/// codeword, so decoding is right exactly when no bit of the block flipped.
pub fn dsr_accuracy(code: &DsrCode, p_flip: f64) -> f64 {
    if p_flip >= 0.5 {
        return 1.0 / code.n_tokens as f64;
    }
    (1.0 - p_flip).powi(code.block_bits as i32)
}

/// Bits retrieved without noise: every held token is recovered.
pub fn dsr_capacity_bits(code: &DsrCode, length: usize) -> f64 {
    (length.min(code.capacity_slots) * code.block_bits) as f64
}
