use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for `a_ij = conj(a_ji)` and for a real trace.
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    /// `diag(values)`.
    pub fn from_diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn matmul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.check_dim(rhs)?;
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.check_dim(rhs)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.check_dim(rhs)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    fn check_dim(&self, rhs: &CMatrix) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// A dense complex matrix that passed the Hermiticity check.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates `m` against [`HERMITICITY_TOLERANCE`].
    pub fn new(m: CMatrix) -> Result<Self> {
        let deviation = m.hermiticity_deviation();
        if !(deviation <= HERMITICITY_TOLERANCE) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::hermitian_part(&m))
    }

    /// `(m + m†)/2` with an exactly real diagonal. No check.
    pub fn hermitian_part(m: &CMatrix) -> Self {
        let n = m.dim();
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            out[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let z = 0.5 * (m[(i, j)] + m[(j, i)].conj());
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        Self(out)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(CMatrix::zeros(dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(CMatrix::identity(dim))
    }

    pub fn from_diagonal(values: &[f64]) -> Self {
        Self(CMatrix::from_diagonal(values))
    }

    /// `|v⟩⟨v|`, unnormalized.
    pub fn projector(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(v[i].norm_sqr(), 0.0);
            for j in (i + 1)..n {
                let z = v[i] * v[j].conj();
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        Self(m)
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        Self::new(CMatrix::from_rows(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    pub fn add(&self, rhs: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(Self(self.0.add(&rhs.0)?))
    }

    pub fn sub(&self, rhs: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(Self(self.0.sub(&rhs.0)?))
    }

    pub fn scale(&self, s: f64) -> HermitianMatrix {
        Self(self.0.scale(Complex64::new(s, 0.0)))
    }

    /// `Σ_i w_i M_i`.
    pub fn weighted_sum(weights: &[f64], terms: &[HermitianMatrix]) -> Result<HermitianMatrix> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("weighted sum of no matrices".into()))?;
        if weights.len() != terms.len() {
            return Err(Error::DimensionMismatch {
                expected: terms.len(),
                found: weights.len(),
            });
        }
        let mut acc = HermitianMatrix::zeros(first.dim());
        for (w, t) in weights.iter().zip(terms) {
            acc = acc.add(&t.scale(*w))?;
        }
        Ok(acc)
    }

    /// `self · inner · self`, symmetrized.
    pub fn sandwich(&self, inner: &HermitianMatrix) -> Result<HermitianMatrix> {
        let prod = self.0.matmul(&inner.0)?.matmul(&self.0)?;
        Ok(Self::hermitian_part(&prod))
    }

    /// `tr(self · rhs)`, real for Hermitian arguments.
    pub fn trace_product(&self, rhs: &HermitianMatrix) -> Result<f64> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.0[(i, j)] * rhs.0[(j, i)]).re;
            }
        }
        Ok(acc)
    }

    /// `⟨v|self|v⟩`.
    pub fn expectation(&self, v: &[Complex64]) -> Result<f64> {
        let mv = self.0.mul_vec(v)?;
        Ok(v.iter().zip(&mv).map(|(a, b)| (a.conj() * b).re).sum())
    }

    /// `U · self · U†` for a (not necessarily square-checked) unitary `u`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<HermitianMatrix> {
        let prod = u.matmul(&self.0)?.matmul(&u.adjoint())?;
        Ok(Self::hermitian_part(&prod))
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

/// A Hermitian operator on a direct sum, stored one block at a time.
///
/// Entries between different blocks are zero by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiagonal {
    blocks: Vec<HermitianMatrix>,
}

impl BlockDiagonal {
    pub fn new(blocks: Vec<HermitianMatrix>) -> Self {
        Self { blocks }
    }

    pub fn blocks(&self) -> &[HermitianMatrix] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<HermitianMatrix> {
        self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(HermitianMatrix::dim).sum()
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(HermitianMatrix::trace).sum()
    }

    /// Starting row of each block in the embedded matrix.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = acc;
                acc += b.dim();
                o
            })
            .collect()
    }

    /// Embeds the blocks into one dense matrix.
    pub fn to_dense(&self) -> HermitianMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(n);
        for (block, off) in self.blocks.iter().zip(self.offsets()) {
            for i in 0..block.dim() {
                for j in 0..block.dim() {
                    m[(off + i, off + j)] = block[(i, j)];
                }
            }
        }
        HermitianMatrix(m)
    }
}
