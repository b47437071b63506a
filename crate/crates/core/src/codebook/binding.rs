use super::unitary::{haar_orthogonal, SchurBasis};
use super::Scheme;
use crate::error::{dim, param, Error, Result};
use crate::seed;
use nalgebra::{DMatrix, DVectorView};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::sync::{Arc, OnceLock};

/// Kind of recurrent binding matrix U in W = λU.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BindingKind {
    /// Uniform random single N-cycle.
    Permutation,
    /// Circular convolution with a key of unit-modulus spectrum.
    Circulant,
    /// Element-wise multiplication of N/2 complex pairs by unit phasors.
    PhasorDiagonal,
    /// Haar random orthogonal matrix.
    RandomUnitary,
}

impl BindingKind {
    pub fn name(self) -> &'static str {
        match self {
            BindingKind::Permutation => "permutation",
            BindingKind::Circulant => "circulant",
            BindingKind::PhasorDiagonal => "phasor_diagonal",
            BindingKind::RandomUnitary => "random_unitary",
        }
    }
}

#[derive(Clone)]
struct Fourier {
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fourier {
    fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fourier { len, forward: planner.plan_fft_forward(len), inverse: planner.plan_fft_inverse(len) }
    }
}

impl std::fmt::Debug for Fourier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Fourier({})", self.len)
    }
}

#[derive(Debug, Clone)]
enum Repr {
    /// `cycle[j]` is the j-th index visited; W moves entry `cycle[j]` to `cycle[j+1]`.
    Permutation { cycle: Vec<usize> },
    /// Key of length L acting by circular convolution. With `paired`, vectors
    /// hold L complex numbers `re | im`, the key is complex (stored the same
    /// way) and every Fourier mode gets an independent phase.
    Circulant { key: Vec<f64>, spectrum: Vec<Complex64>, paired: bool, fourier: Fourier },
    Phasor { phases: Vec<f64> },
    Unitary { matrix: DMatrix<f64>, schur: OnceLock<Arc<SchurBasis>> },
}

/// The recurrent map W = λU with exact inverse and integer powers.
#[derive(Debug, Clone)]
pub struct BindingOperator {
    kind: BindingKind,
    n_dim: usize,
    contraction: f64,
    seed: u64,
    repr: Repr,
}

/// Build an operator for a vector of `n_dim` reals. Circulant keys span the
/// whole vector.
pub fn make_binding(kind: BindingKind, n_dim: usize, contraction: f64, seed: u64) -> Result<BindingOperator> {
    build(kind, n_dim, contraction, seed, false)
}

/// Build the operator a scheme uses. For FHRR a circulant is complex
/// circular convolution of the N/2 complex elements with a complex key.
pub fn make_binding_for(
    scheme: Scheme,
    kind: BindingKind,
    n_dim: usize,
    contraction: f64,
    seed: u64,
) -> Result<BindingOperator> {
    build(kind, n_dim, contraction, seed, scheme == Scheme::Fhrr && kind == BindingKind::Circulant)
}

fn check_contraction(contraction: f64) -> Result<()> {
    if !(contraction > 0.0 && contraction <= 1.0) {
        return Err(param(format!("contraction {contraction} outside (0, 1]")));
    }
    Ok(())
}

fn build(kind: BindingKind, n_dim: usize, contraction: f64, seed: u64, paired: bool) -> Result<BindingOperator> {
    check_contraction(contraction)?;
    if n_dim < 1 {
        return Err(dim("n_dim must be positive"));
    }
    if (kind == BindingKind::PhasorDiagonal || paired) && !n_dim.is_multiple_of(2) {
        return Err(dim(format!("{} needs an even n_dim, got {n_dim}", kind.name())));
    }
    let mut rng = seed::rng(seed::derive(seed, seed::stream::BINDING));
    let repr = match kind {
        BindingKind::Permutation => {
            let mut cycle: Vec<usize> = (0..n_dim).collect();
            cycle.shuffle(&mut rng);
            permutation_repr(cycle)
        }
        BindingKind::Circulant => {
            let len = if paired { n_dim / 2 } else { n_dim };
            let mut spectrum = vec![Complex64::new(0.0, 0.0); len];
            let phase = |rng: &mut rand_chacha::ChaCha8Rng| {
                Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU)
            };
            if paired {
                spectrum.iter_mut().for_each(|e| *e = phase(&mut rng));
            } else {
                // Hermitian symmetric so the key is real
                let sign = |rng: &mut rand_chacha::ChaCha8Rng| if rng.random::<bool>() { 1.0 } else { -1.0 };
                spectrum[0] = Complex64::new(sign(&mut rng), 0.0);
                for k in 1..len.div_ceil(2) {
                    let e = phase(&mut rng);
                    spectrum[k] = e;
                    spectrum[len - k] = e.conj();
                }
                if len % 2 == 0 && len > 1 {
                    spectrum[len / 2] = Complex64::new(sign(&mut rng), 0.0);
                }
            }
            let fourier = Fourier::new(len);
            fourier.inverse.process(&mut spectrum);
            let key = if paired {
                spectrum.iter().map(|c| c.re / len as f64).chain(spectrum.iter().map(|c| c.im / len as f64)).collect()
            } else {
                spectrum.iter().map(|c| c.re / len as f64).collect()
            };
            // the stored spectrum is recomputed from the key so a reloaded
            // operator is bit-identical
            circulant_repr(key, paired, fourier)
        }
        BindingKind::PhasorDiagonal => {
            let phases = (0..n_dim / 2).map(|_| rng.random::<f64>() * std::f64::consts::TAU).collect();
            Repr::Phasor { phases }
        }
        BindingKind::RandomUnitary => {
            Repr::Unitary { matrix: haar_orthogonal(n_dim, &mut rng), schur: OnceLock::new() }
        }
    };
    Ok(BindingOperator { kind, n_dim, contraction, seed, repr })
}

fn permutation_repr(cycle: Vec<usize>) -> Repr {
    Repr::Permutation { cycle }
}

/// (λU)^power v.
pub fn bind(op: &BindingOperator, v: &[f64], power: i64) -> Result<Vec<f64>> {
    let mut out = vec![0.0; v.len()];
    op.apply_into(v, power, &mut out)?;
    Ok(out)
}

impl BindingOperator {
    /// Cyclic shift by one position, `(a, b, c) -> (c, a, b)`.
    pub fn cyclic_shift(n_dim: usize, contraction: f64) -> Result<Self> {
        check_contraction(contraction)?;
        Ok(BindingOperator {
            kind: BindingKind::Permutation,
            n_dim,
            contraction,
            seed: 0,
            repr: permutation_repr((0..n_dim).collect()),
        })
    }

    pub fn kind(&self) -> BindingKind {
        self.kind
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn contraction(&self) -> f64 {
        self.contraction
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Visiting order of the permutation cycle.
    pub fn cycle(&self) -> Option<&[usize]> {
        match &self.repr {
            Repr::Permutation { cycle, .. } => Some(cycle),
            _ => None,
        }
    }

    /// Convolution key (circulant only), `re | im` when paired.
    pub fn key(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Circulant { key, .. } => Some(key),
            _ => None,
        }
    }

    pub fn is_paired(&self) -> bool {
        matches!(self.repr, Repr::Circulant { paired: true, .. })
    }

    pub fn phases(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Phasor { phases } => Some(phases),
            _ => None,
        }
    }

    pub fn matrix(&self) -> Option<&DMatrix<f64>> {
        match &self.repr {
            Repr::Unitary { matrix, .. } => Some(matrix),
            _ => None,
        }
    }

    /// λ^power.
    pub fn scale(&self, power: i64) -> f64 {
        if self.contraction == 1.0 {
            1.0
        } else if let Ok(p) = i32::try_from(power) {
            self.contraction.powi(p)
        } else {
            self.contraction.powf(power as f64)
        }
    }

    fn schur(&self) -> Result<&Arc<SchurBasis>> {
        match &self.repr {
            Repr::Unitary { matrix, schur } => {
                if let Some(s) = schur.get() {
                    return Ok(s);
                }
                let basis = Arc::new(SchurBasis::new(matrix)?);
                Ok(schur.get_or_init(|| basis))
            }
            _ => Err(Error::InvalidConfig("not a random unitary operator".into())),
        }
    }

    /// out = (λU)^power v.
    pub fn apply_into(&self, v: &[f64], power: i64, out: &mut [f64]) -> Result<()> {
        let n = self.n_dim;
        if v.len() != n || out.len() != n {
            return Err(dim(format!("operator has n_dim {n}, vector has {}", v.len())));
        }
        if power == 0 {
            out.copy_from_slice(v);
            return Ok(());
        }
        let scale = self.scale(power);
        match &self.repr {
            Repr::Permutation { cycle, .. } => {
                let shift = power.rem_euclid(n as i64) as usize;
                for j in 0..n {
                    let t = if j + shift >= n { j + shift - n } else { j + shift };
                    out[cycle[t]] = scale * v[cycle[j]];
                }
            }
            Repr::Circulant { spectrum, paired, fourier, .. } => {
                let len = fourier.len;
                let mut buf: Vec<Complex64> = if *paired {
                    (0..len).map(|j| Complex64::new(v[j], v[j + len])).collect()
                } else {
                    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
                };
                fourier.forward.process(&mut buf);
                for (b, w) in buf.iter_mut().zip(spectrum) {
                    *b *= unit_power(*w, power);
                }
                fourier.inverse.process(&mut buf);
                let norm = scale / len as f64;
                if *paired {
                    for j in 0..len {
                        out[j] = buf[j].re * norm;
                        out[j + len] = buf[j].im * norm;
                    }
                } else {
                    for (o, b) in out.iter_mut().zip(&buf) {
                        *o = b.re * norm;
                    }
                }
            }
            Repr::Phasor { phases } => {
                let half = phases.len();
                let p = power as f64;
                for j in 0..half {
                    let (s, c) = (p * phases[j]).sin_cos();
                    let (re, im) = (v[j], v[j + half]);
                    out[j] = scale * (re * c - im * s);
                    out[j + half] = scale * (re * s + im * c);
                }
            }
            Repr::Unitary { matrix, .. } => {
                let x = DVectorView::from_slice(v, n);
                match power {
                    0 => out.copy_from_slice(v),
                    1 => out.copy_from_slice((matrix * x).as_slice()),
                    -1 => out.copy_from_slice((matrix.tr_mul(&x)).as_slice()),
                    _ => {
                        let schur = self.schur()?;
                        let mut modes = schur.modes(v);
                        for (m, e) in modes.iter_mut().zip(schur.eigenvalues()) {
                            *m *= unit_power(e, power);
                        }
                        let mut psi = vec![0.0; n];
                        schur.unpack(&modes, &mut psi);
                        out.copy_from_slice((&schur.z * DVectorView::from_slice(&psi, n)).as_slice());
                    }
                }
                if scale != 1.0 {
                    out.iter_mut().for_each(|o| *o *= scale);
                }
            }
        }
        Ok(())
    }

    /// Diagonalization of U used by spectral fast paths: unit eigenvalues per
    /// mode and a map from real vectors to mode coefficients.
    pub fn spectrum(&self) -> Result<Spectrum> {
        match &self.repr {
            Repr::Permutation { .. } => Err(Error::InvalidConfig(
                "permutations use the cycle frame, not a spectrum".into(),
            )),
            Repr::Circulant { spectrum, paired, fourier, .. } => Ok(Spectrum {
                eigen: spectrum.clone(),
                weight: 1.0 / fourier.len as f64,
                basis: Basis::Fourier { fourier: fourier.clone(), paired: *paired },
            }),
            Repr::Phasor { phases } => Ok(Spectrum {
                eigen: phases.iter().map(|&p| Complex64::from_polar(1.0, p)).collect(),
                weight: 1.0,
                basis: Basis::Split { half: phases.len() },
            }),
            Repr::Unitary { .. } => {
                let schur = self.schur()?.clone();
                Ok(Spectrum { eigen: schur.eigenvalues(), weight: 1.0, basis: Basis::Schur(schur) })
            }
        }
    }

    pub(crate) fn wire(&self) -> Wire {
        let payload = match &self.repr {
            Repr::Permutation { cycle, .. } => Payload::Permutation { cycle: cycle.clone() },
            Repr::Circulant { key, paired, .. } => Payload::Circulant { key: key.clone(), paired: *paired },
            Repr::Phasor { phases } => Payload::Phasor { phases: phases.clone() },
            Repr::Unitary { matrix, .. } => Payload::Unitary { entries: matrix.as_slice().to_vec() },
        };
        Wire { kind: self.kind, n_dim: self.n_dim, contraction: self.contraction, seed: self.seed, payload }
    }

    pub(crate) fn from_wire(w: Wire) -> Result<Self> {
        check_contraction(w.contraction)?;
        let n = w.n_dim;
        let repr = match (w.kind, w.payload) {
            (BindingKind::Permutation, Payload::Permutation { cycle }) => {
                let mut seen = vec![false; n];
                if cycle.len() != n || cycle.iter().any(|&c| c >= n || std::mem::replace(&mut seen[c], true)) {
                    return Err(dim("permutation cycle is not a permutation of 0..n_dim"));
                }
                permutation_repr(cycle)
            }
            (BindingKind::Circulant, Payload::Circulant { key, paired }) => {
                let len = if paired { n / 2 } else { n };
                if key.len() != n || (paired && !n.is_multiple_of(2)) {
                    return Err(dim("circulant key length does not match n_dim"));
                }
                circulant_repr(key, paired, Fourier::new(len))
            }
            (BindingKind::PhasorDiagonal, Payload::Phasor { phases }) => {
                if 2 * phases.len() != n {
                    return Err(dim("phasor key length does not match n_dim"));
                }
                Repr::Phasor { phases }
            }
            (BindingKind::RandomUnitary, Payload::Unitary { entries }) => {
                if entries.len() != n * n {
                    return Err(dim("matrix size does not match n_dim"));
                }
                Repr::Unitary { matrix: DMatrix::from_vec(n, n, entries), schur: OnceLock::new() }
            }
            _ => return Err(Error::Container("payload does not match binding kind".into())),
        };
        Ok(BindingOperator { kind: w.kind, n_dim: n, contraction: w.contraction, seed: w.seed, repr })
    }
}

impl Serialize for BindingOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BindingOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = Wire::deserialize(d)?;
        BindingOperator::from_wire(wire).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct Wire {
    pub kind: BindingKind,
    pub n_dim: usize,
    pub contraction: f64,
    pub seed: u64,
    pub payload: Payload,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub(crate) enum Payload {
    Permutation { cycle: Vec<usize> },
    Circulant { key: Vec<f64>, paired: bool },
    Phasor { phases: Vec<f64> },
    Unitary { entries: Vec<f64> },
}

/// w^k for a unit-modulus w, via its argument so large powers stay on the circle.
#[inline]
fn unit_power(w: Complex64, k: i64) -> Complex64 {
    match k {
        0 => Complex64::new(1.0, 0.0),
        1 => w,
        -1 => w.conj(),
        _ => Complex64::from_polar(1.0, w.arg() * k as f64),
    }
}

#[derive(Debug, Clone)]
enum Basis {
    Fourier { fourier: Fourier, paired: bool },
    Split { half: usize },
    Schur(Arc<SchurBasis>),
}

/// Eigen-decomposition of a unitary binding. For real vectors u, v with mode
/// coefficients û, v̂: uᵀv = weight · Σ Re(û conj(v̂)), and U acts on mode j
/// by multiplication with `eigen[j]`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigen: Vec<Complex64>,
    pub weight: f64,
    basis: Basis,
}

impl Spectrum {
    pub fn modes(&self, v: &[f64]) -> Vec<Complex64> {
        match &self.basis {
            Basis::Fourier { fourier, paired } => {
                let len = fourier.len;
                let mut buf: Vec<Complex64> = if *paired {
                    (0..len).map(|j| Complex64::new(v[j], v[j + len])).collect()
                } else {
                    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
                };
                fourier.forward.process(&mut buf);
                buf
            }
            Basis::Split { half } => (0..*half).map(|j| Complex64::new(v[j], v[j + half])).collect(),
            Basis::Schur(s) => s.modes(v),
        }
    }

    /// Mode coefficients for many columns at once (one matrix product for the
    /// Schur basis).
    pub fn modes_of_columns<'a>(&self, columns: impl Iterator<Item = &'a [f64]>) -> Vec<Vec<Complex64>> {
        match &self.basis {
            Basis::Schur(s) => {
                let cols: Vec<&[f64]> = columns.collect();
                if cols.is_empty() {
                    return Vec::new();
                }
                let n = cols[0].len();
                let mut m = DMatrix::<f64>::zeros(n, cols.len());
                for (j, c) in cols.iter().enumerate() {
                    m.column_mut(j).copy_from_slice(c);
                }
                let psi = &s.zt * m;
                (0..cols.len()).map(|j| s.pack(psi.column(j).as_slice())).collect()
            }
            _ => columns.map(|c| self.modes(c)).collect(),
        }
    }
}

fn circulant_repr(key: Vec<f64>, paired: bool, fourier: Fourier) -> Repr {
    let len = if paired { key.len() / 2 } else { key.len() };
    let mut spectrum: Vec<Complex64> = if paired {
        (0..len).map(|j| Complex64::new(key[j], key[j + len])).collect()
    } else {
        key.iter().map(|&k| Complex64::new(k, 0.0)).collect()
    };
    fourier.forward.process(&mut spectrum);
    Repr::Circulant { key, spectrum, paired, fourier }
}
