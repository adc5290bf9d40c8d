//! Dense square matrices over the reals and the quaternions, with Gauss-Jordan inversion.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Pivots smaller than this fraction of the largest initial entry are treated as zero.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

/// Square real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self {
            dim,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn mul(&self, rhs: &RealMatrix) -> Result<RealMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = RealMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// Max-norm of the entrywise difference.
    pub fn max_abs_diff(&self, other: &RealMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn invert_real(m: &RealMatrix) -> Result<RealMatrix> {
    let n = m.dim;
    let threshold = SINGULARITY_THRESHOLD * m.max_abs_entry();
    if m.data.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    let mut a = m.clone();
    let mut inv = RealMatrix::identity(n);

    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, a[(r, col)]))
            .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
            .unwrap_or((col, 0.0));
        if pivot.abs() <= threshold || pivot == 0.0 {
            return Err(Error::SingularMatrix {
                column: col,
                pivot: pivot.abs(),
                threshold,
            });
        }
        if pivot_row != col {
            swap_rows(&mut a, pivot_row, col);
            swap_rows(&mut inv, pivot_row, col);
        }

        let scale = 1.0 / pivot;
        for j in 0..n {
            a[(col, j)] *= scale;
            inv[(col, j)] *= scale;
        }

        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[(r, col)];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                a.data[r * n + j] -= factor * a.data[col * n + j];
                inv.data[r * n + j] -= factor * inv.data[col * n + j];
            }
        }
    }
    Ok(inv)
}

fn swap_rows(m: &mut RealMatrix, r1: usize, r2: usize) {
    let n = m.dim;
    for j in 0..n {
        m.data.swap(r1 * n + j, r2 * n + j);
    }
}

/// Square quaternion matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionMatrix {
    dim: usize,
    data: Vec<Quaternion>,
}

impl QuaternionMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Quaternion::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self {
            dim,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[Quaternion] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Matrix product with Hamilton-product entries, `(AB)_ij = sum_k a_ik b_kj`.
    pub fn mul(&self, rhs: &QuaternionMatrix) -> Result<QuaternionMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let n = self.dim;
        Ok(QuaternionMatrix::from_fn(n, |i, j| {
            (0..n).fold(Quaternion::ZERO, |acc, k| acc + self[(i, k)] * rhs[(k, j)])
        }))
    }

    pub fn max_abs_diff(&self, other: &QuaternionMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }

    /// The 4n x 4n real matrix whose 4x4 blocks are the left-multiplication
    /// matrices of the entries. A ring homomorphism.
    pub fn embed(&self) -> RealMatrix {
        let n = self.dim;
        let mut out = RealMatrix::zeros(4 * n);
        for i in 0..n {
            for j in 0..n {
                let block = left_mul_matrix(self[(i, j)]);
                for (r, row) in block.iter().enumerate() {
                    for (c, v) in row.iter().enumerate() {
                        out[(4 * i + r, 4 * j + c)] = *v;
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for QuaternionMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for QuaternionMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.dim + j]
    }
}

/// `L(p)` with `L(p) vec(q) = vec(p q)`.
pub fn left_mul_matrix(p: Quaternion) -> [[f64; 4]; 4] {
    let Quaternion { q0, q1, q2, q3 } = p;
    [
        [q0, -q1, -q2, -q3],
        [q1, q0, -q3, q2],
        [q2, q3, q0, -q1],
        [q3, -q2, q1, q0],
    ]
}

/// Two-sided inverse over the quaternions, via the real left-regular embedding.
pub fn invert_quaternion(m: &QuaternionMatrix) -> Result<QuaternionMatrix> {
    let inv = invert_real(&m.embed())?;
    // The first column of each block L(q) is q itself.
    Ok(QuaternionMatrix::from_fn(m.dim, |i, j| {
        Quaternion::new(
            inv[(4 * i, 4 * j)],
            inv[(4 * i + 1, 4 * j)],
            inv[(4 * i + 2, 4 * j)],
            inv[(4 * i + 3, 4 * j)],
        )
    }))
}
