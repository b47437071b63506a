//! Stateful encoder/decoder used by the harness. Besides the direct path it
//! has two exact reformulations that avoid applying W explicitly:
//!
//! * cycle frame: for a permutation W the state is kept in cycle order, so
//!   one update is a ring-offset increment and reads are contiguous;
//! * spectral frame: for linear networks with a diagonalizable unitary W
//!   (circulant, phasor, random orthogonal) the state is kept as mode
//!   coefficients, so an update is an element-wise multiply.

use super::{check_lookback, validate, Activation, MemoryState, NetworkConfig, NoiseModel, Slot};
use crate::codebook::{dot, BindingKind, BindingOperator, Codebook};
use crate::error::{config as config_error, param, Result};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnginePath {
    Direct,
    Cycle,
    Spectral,
}

enum Frame {
    Direct {
        state: MemoryState,
        scratch: Vec<f64>,
        noisy: Vec<f64>,
    },
    Cycle {
        cycle: Vec<usize>,
        /// D columns of N, each permuted into cycle order.
        phi: Vec<f64>,
        /// u[i] holds cycle position (i + offset) mod N.
        u: Vec<f64>,
        offset: usize,
        z: Vec<f64>,
        noise: Vec<f64>,
    },
    Spectral {
        eigen: Vec<Complex64>,
        weight: f64,
        phi_re: Vec<Vec<f64>>,
        phi_im: Vec<Vec<f64>>,
        x: Vec<Complex64>,
        y_re: Vec<f64>,
        y_im: Vec<f64>,
    },
}

pub struct Engine<'a> {
    config: NetworkConfig,
    codebook: &'a Codebook,
    binding: &'a BindingOperator,
    noise: NoiseModel,
    frame: Frame,
    steps: usize,
    items: usize,
}

impl<'a> Engine<'a> {
    /// Pick the fastest exact path for this network.
    pub fn new(
        config: NetworkConfig,
        codebook: &'a Codebook,
        binding: &'a BindingOperator,
        noise: NoiseModel,
    ) -> Result<Self> {
        let path = Self::preferred_path(&config, binding, &noise);
        Self::with_path(config, codebook, binding, noise, path)
    }

    pub fn preferred_path(config: &NetworkConfig, binding: &BindingOperator, noise: &NoiseModel) -> EnginePath {
        if binding.kind() == BindingKind::Permutation {
            EnginePath::Cycle
        } else if config.activation == Activation::Linear && *noise == NoiseModel::None {
            EnginePath::Spectral
        } else {
            EnginePath::Direct
        }
    }

    pub fn with_path(
        config: NetworkConfig,
        codebook: &'a Codebook,
        binding: &'a BindingOperator,
        noise: NoiseModel,
        path: EnginePath,
    ) -> Result<Self> {
        validate(&config, codebook, binding, &noise)?;
        let n = config.n_dim;
        let frame = match path {
            EnginePath::Direct => Frame::Direct {
                state: MemoryState::empty(n),
                scratch: vec![0.0; n],
                noisy: vec![0.0; n],
            },
            EnginePath::Cycle => {
                let cycle = binding
                    .cycle()
                    .ok_or_else(|| config_error("the cycle frame needs a permutation binding"))?
                    .to_vec();
                let mut phi = vec![0.0; n * codebook.n_tokens];
                for (dst, src) in phi.chunks_exact_mut(n).zip(codebook.columns()) {
                    for (t, &c) in dst.iter_mut().zip(&cycle) {
                        *t = src[c];
                    }
                }
                Frame::Cycle { cycle, phi, u: vec![0.0; n], offset: 0, z: vec![0.0; n], noise: vec![0.0; n] }
            }
            EnginePath::Spectral => {
                if config.activation != Activation::Linear || noise != NoiseModel::None {
                    return Err(config_error("the spectral frame needs a linear, noise-free network"));
                }
                let spectrum = binding.spectrum()?;
                let modes = spectrum.modes_of_columns(codebook.columns());
                let phi_re = modes.iter().map(|m| m.iter().map(|c| c.re).collect()).collect();
                let phi_im = modes.iter().map(|m| m.iter().map(|c| c.im).collect()).collect();
                let len = spectrum.eigen.len();
                Frame::Spectral {
                    eigen: spectrum.eigen,
                    weight: spectrum.weight,
                    phi_re,
                    phi_im,
                    x: vec![Complex64::new(0.0, 0.0); len],
                    y_re: vec![0.0; len],
                    y_im: vec![0.0; len],
                }
            }
        };
        Ok(Engine { config, codebook, binding, noise, frame, steps: 0, items: 0 })
    }

    pub fn path(&self) -> EnginePath {
        match self.frame {
            Frame::Direct { .. } => EnginePath::Direct,
            Frame::Cycle { .. } => EnginePath::Cycle,
            Frame::Spectral { .. } => EnginePath::Spectral,
        }
    }

    pub fn steps_elapsed(&self) -> usize {
        self.steps
    }

    pub fn items_stored(&self) -> usize {
        self.items
    }

    /// Back to x = 0.
    pub fn reset(&mut self) {
        self.steps = 0;
        self.items = 0;
        match &mut self.frame {
            Frame::Direct { state, .. } => *state = MemoryState::empty(self.config.n_dim),
            Frame::Cycle { u, offset, .. } => {
                u.iter_mut().for_each(|v| *v = 0.0);
                *offset = 0;
            }
            Frame::Spectral { x, .. } => x.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0)),
        }
    }

    /// Current state in natural coordinates (not available in the spectral frame).
    pub fn state(&self) -> Option<MemoryState> {
        match &self.frame {
            Frame::Direct { state, .. } => Some(state.clone()),
            Frame::Cycle { cycle, u, offset, .. } => {
                let n = u.len();
                let mut x = vec![0.0; n];
                for (i, &v) in u.iter().enumerate() {
                    x[cycle[(i + offset) % n]] = v;
                }
                Some(MemoryState { x, steps_elapsed: self.steps, items_stored: self.items })
            }
            Frame::Spectral { .. } => None,
        }
    }

    /// One update cycle.
    pub fn push<R: Rng>(&mut self, slot: Slot, rng: &mut R) -> Result<()> {
        if let Slot::Token(d) = slot {
            if d >= self.codebook.n_tokens {
                return Err(param(format!("token {d} outside codebook")));
            }
        }
        let n = self.config.n_dim;
        let lambda = self.config.contraction;
        let act = self.config.activation;
        match &mut self.frame {
            Frame::Direct { state, scratch, .. } => {
                super::step_in_place(&self.config, state, scratch, slot, self.codebook, self.binding, &self.noise, rng)?;
            }
            Frame::Cycle { cycle, phi, u, offset, noise, .. } => {
                *offset = (*offset + 1) % n;
                let o = *offset;
                if let Some(sigma) = self.noise.per_step_sigma() {
                    let normal = Normal::new(0.0, sigma).expect("finite sigma");
                    for v in noise.iter_mut() {
                        *v = normal.sample(rng);
                    }
                }
                let per_step = self.noise.per_step_sigma().is_some();
                let col = match slot {
                    Slot::Token(d) => Some(&phi[d * n..(d + 1) * n]),
                    Slot::Empty => None,
                };
                // storage i holds cycle position j = i + o (mod n)
                let split = n - o;
                for (range, shift) in [(0..split, o as isize), (split..n, o as isize - n as isize)] {
                    for i in range {
                        let j = (i as isize + shift) as usize;
                        let mut v = lambda * u[i];
                        if let Some(c) = col {
                            v += c[j];
                        }
                        if per_step {
                            v += noise[cycle[j]];
                        }
                        u[i] = act.apply(v);
                    }
                }
            }
            Frame::Spectral { eigen, phi_re, phi_im, x, .. } => match slot {
                Slot::Token(d) => {
                    for (j, xj) in x.iter_mut().enumerate() {
                        *xj = eigen[j] * *xj * lambda + Complex64::new(phi_re[d][j], phi_im[d][j]);
                    }
                }
                Slot::Empty => {
                    for (xj, e) in x.iter_mut().zip(eigen.iter()) {
                        *xj = *e * *xj * lambda;
                    }
                }
            },
        }
        self.steps += 1;
        if let Slot::Token(_) = slot {
            self.items += 1;
        }
        Ok(())
    }

    /// h_d = Φ_dᵀ W^{−K} x for every token, written into `out`.
    pub fn scores<R: Rng>(&mut self, lookback: usize, rng: &mut R, out: &mut Vec<f64>) -> Result<()> {
        check_lookback(self.binding, lookback, self.steps)?;
        let n = self.config.n_dim;
        let inv_scale = self.binding.scale(-(lookback as i64));
        out.clear();
        match &mut self.frame {
            Frame::Direct { state, scratch, noisy } => {
                noisy.copy_from_slice(&state.x);
                self.noise.apply_readout(noisy, rng);
                self.binding.apply_into(noisy, -(lookback as i64), scratch)?;
                out.extend(self.codebook.columns().map(|c| dot(c, scratch)));
            }
            Frame::Cycle { cycle, phi, u, offset, z, noise } => {
                let s = (lookback % n + n - *offset) % n;
                z[..n - s].copy_from_slice(&u[s..]);
                z[n - s..].copy_from_slice(&u[..s]);
                match self.noise {
                    NoiseModel::ReadoutGaussian { .. } if self.noise.has_readout() => {
                        noise.iter_mut().for_each(|v| *v = 0.0);
                        self.noise.apply_readout(noise, rng);
                        let k = lookback % n;
                        for (j, zj) in z.iter_mut().enumerate() {
                            *zj += noise[cycle[(j + k) % n]];
                        }
                    }
                    NoiseModel::BitFlip { .. } if self.noise.has_readout() => {
                        noise.iter_mut().for_each(|v| *v = 1.0);
                        self.noise.apply_readout(noise, rng);
                        let k = lookback % n;
                        for (j, zj) in z.iter_mut().enumerate() {
                            *zj *= noise[cycle[(j + k) % n]];
                        }
                    }
                    _ => {}
                }
                out.extend(phi.chunks_exact(n).map(|c| inv_scale * dot(c, z)));
            }
            Frame::Spectral { eigen, weight, phi_re, phi_im, x, y_re, y_im } => {
                let k = lookback as f64;
                for j in 0..x.len() {
                    let y = if lookback == 0 {
                        x[j]
                    } else {
                        Complex64::from_polar(1.0, -k * eigen[j].arg()) * x[j]
                    };
                    y_re[j] = y.re;
                    y_im[j] = y.im;
                }
                let w = *weight * inv_scale;
                out.extend(phi_re.iter().zip(phi_im.iter()).map(|(r, i)| w * (dot(r, y_re) + dot(i, y_im))));
            }
        }
        Ok(())
    }
}
