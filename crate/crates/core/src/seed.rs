//! Seed derivation. Every random artifact is built from a `ChaCha8Rng`
//! whose seed is a deterministic mix of a master seed and a stream index,
//! so results never depend on execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tags for the artifacts derived from a trial or run seed.
pub mod stream {
    pub const CODEBOOK: u64 = 0xC0DE;
    pub const BINDING: u64 = 0xB1D;
    pub const SPARSITY: u64 = 0x5FA5;
    pub const TRIAL: u64 = 0x7121;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mix a parent seed with an index into a child seed.
pub fn derive(parent: u64, index: u64) -> u64 {
    splitmix64(splitmix64(parent) ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
