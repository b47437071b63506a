//! Superposition memories for vector-symbolic architectures.
//!
//! A sequence of tokens is stored in one vector by the recurrent update
//! `x(m) = f(W x(m-1) + Φ a(m))` and read back by undoing `K` applications of
//! `W` and picking the best-matching codebook column. The crate provides
//! the codebooks and binding operators, the network itself, the Gaussian
//! retrieval theory with its capacity calculations, a distributed shift
//! register baseline, and a seeded Monte-Carlo harness that checks one
//! against the other.

pub mod codebook;
pub mod container;
pub mod dsr;
pub mod error;
pub mod harness;
pub mod memory;
pub mod seed;
pub mod theory;

pub use codebook::{
    bind, generate_codebook, make_binding, make_binding_for, similarity, BindingKind, BindingOperator, Codebook,
    Scheme,
};
pub use error::{Error, Result};
pub use memory::{
    classify, decode_scores, detect, encode_sequence, step, Activation, Detection, InputSequence, MemoryState,
    NetworkConfig, NoiseModel, Slot,
};
