//! Haar-random orthogonal matrices and their real Schur form.

use crate::error::{param, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Haar orthogonal matrix: QR of a Gaussian matrix with the signs of R's
/// diagonal folded into Q.
pub(crate) fn haar_orthogonal<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// One invariant subspace of an orthogonal matrix in its real Schur basis.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Block {
    /// Rows (p, p+1) rotate by the given unit eigenvalue.
    Pair(usize, Complex64),
    /// Row p is scaled by ±1.
    Single(usize, f64),
}

/// U = Z T Zᵀ with T block diagonal (rotations and ±1).
#[derive(Debug, Clone)]
pub(crate) struct SchurBasis {
    pub z: DMatrix<f64>,
    pub zt: DMatrix<f64>,
    pub blocks: Vec<Block>,
}

impl SchurBasis {
    pub fn new(u: &DMatrix<f64>) -> Result<Self> {
        let n = u.nrows();
        let schur = nalgebra::linalg::Schur::try_new(u.clone(), 1e-15, 100_000)
            .ok_or_else(|| param("Schur iteration did not converge"))?;
        let (z, t) = schur.unpack();
        let mut blocks = Vec::with_capacity(n);
        let mut p = 0;
        while p < n {
            if p + 1 < n && t[(p + 1, p)].abs() > 1e-12 {
                let cos = 0.5 * (t[(p, p)] + t[(p + 1, p + 1)]);
                let sin = 0.5 * (t[(p + 1, p)] - t[(p, p + 1)]);
                let theta = sin.atan2(cos);
                blocks.push(Block::Pair(p, Complex64::from_polar(1.0, theta)));
                p += 2;
            } else {
                blocks.push(Block::Single(p, t[(p, p)].signum()));
                p += 1;
            }
        }
        let basis = SchurBasis { zt: z.transpose(), z, blocks };
        // rebuild U from the idealized blocks and check it
        let mut ideal = DMatrix::<f64>::zeros(n, n);
        for b in &basis.blocks {
            match *b {
                Block::Pair(p, e) => {
                    ideal[(p, p)] = e.re;
                    ideal[(p + 1, p + 1)] = e.re;
                    ideal[(p + 1, p)] = e.im;
                    ideal[(p, p + 1)] = -e.im;
                }
                Block::Single(p, s) => ideal[(p, p)] = s,
            }
        }
        let err = (&basis.z * ideal * &basis.zt - u).amax();
        if err > 1e-9 {
            return Err(param(format!("Schur reconstruction error {err:e}")));
        }
        Ok(basis)
    }

    /// Complex modes of a vector: ψ = Zᵀ v packed per block.
    pub fn modes(&self, v: &[f64]) -> Vec<Complex64> {
        let psi = &self.zt * nalgebra::DVectorView::from_slice(v, v.len());
        self.pack(psi.as_slice())
    }

    pub fn pack(&self, psi: &[f64]) -> Vec<Complex64> {
        self.blocks
            .iter()
            .map(|b| match *b {
                Block::Pair(p, _) => Complex64::new(psi[p], psi[p + 1]),
                Block::Single(p, _) => Complex64::new(psi[p], 0.0),
            })
            .collect()
    }

    pub fn unpack(&self, modes: &[Complex64], psi: &mut [f64]) {
        for (b, m) in self.blocks.iter().zip(modes) {
            match *b {
                Block::Pair(p, _) => {
                    psi[p] = m.re;
                    psi[p + 1] = m.im;
                }
                Block::Single(p, _) => psi[p] = m.re,
            }
        }
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.blocks
            .iter()
            .map(|b| match *b {
                Block::Pair(_, e) => e,
                Block::Single(_, s) => Complex64::new(s, 0.0),
            })
            .collect()
    }
}
