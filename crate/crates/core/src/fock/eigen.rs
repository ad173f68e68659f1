//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices, and
//! spectral matrix functions built on it.

use num_complex::Complex64;

use super::matrix::{CMatrix, HermitianMatrix};
use crate::error::{Error, Result};

/// Eigenvalues below `-PSD_TOLERANCE` make a matrix not positive semidefinite.
pub const PSD_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenConfig {
    pub max_sweeps: usize,
    /// Stop once the off-diagonal Frobenius norm is below this fraction of the
    /// initial Frobenius norm.
    pub relative_tolerance: f64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        Self {
            max_sweeps: 100,
            relative_tolerance: 1e-12,
        }
    }
}

/// `m = V diag(λ) V†` with eigenvalues in descending order and the
/// eigenvectors as the columns of `V`.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
    pub sweeps: usize,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// `V f(Λ) V†` with `f` applied per eigenvalue.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = CMatrix::zeros(n);
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                if vik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        HermitianMatrix::hermitian_part(&out)
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.reconstruct_with(|l| l)
    }

    /// Smallest eigenvalue counted as part of the support of a positive
    /// semidefinite matrix; fails when the matrix is indefinite.
    pub fn support_threshold(&self, cutoff: SupportCutoff) -> Result<f64> {
        let largest = self.eigenvalues.first().copied().unwrap_or(0.0);
        let smallest = self.eigenvalues.last().copied().unwrap_or(0.0);
        if smallest < -PSD_TOLERANCE {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: smallest,
            });
        }
        Ok(match cutoff {
            // An all-zero matrix has empty support.
            SupportCutoff::Relative(_) if largest <= 0.0 => f64::INFINITY,
            SupportCutoff::Relative(r) => r * largest,
            SupportCutoff::Absolute(a) => a,
        })
    }

    /// Frobenius distance of `V†V` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let v = &self.eigenvectors;
        let gram = v.adjoint().matmul(v).expect("square");
        gram.sub(&CMatrix::identity(self.dim())).expect("square").frobenius_norm()
    }
}

pub fn hermitian_eig(m: &HermitianMatrix) -> Result<SpectralDecomposition> {
    hermitian_eig_with(m, EigenConfig::default())
}

/// Cyclic Jacobi: each 2×2 pivot `(p, q)` is first made real by a phase on
/// column `q`, then annihilated by a real plane rotation.
pub fn hermitian_eig_with(m: &HermitianMatrix, config: EigenConfig) -> Result<SpectralDecomposition> {
    let n = m.dim();
    let mut a = m.matrix().clone();
    if a.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("hermitian_eig input"));
    }
    let mut v = CMatrix::identity(n);
    let initial = a.frobenius_norm();
    let target = config.relative_tolerance * initial;

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off > target {
        if sweeps == config.max_sweeps {
            return Err(Error::NotConverged {
                sweeps,
                residual: if initial > 0.0 { off / initial } else { off },
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        off = off_diagonal_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = CMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        sweeps,
    })
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / g;

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    if t == 0.0 {
        // Off-diagonal entry is negligible next to the diagonal gap.
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane.
    let phase_c = phase.conj();
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase_c * (-s);
    let g_qq = phase_c * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Where a spectral function stops treating eigenvalues as part of the support.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SupportCutoff {
    /// Fraction of the largest eigenvalue.
    Relative(f64),
    Absolute(f64),
}

impl Default for SupportCutoff {
    fn default() -> Self {
        SupportCutoff::Relative(1e-10)
    }
}

/// Applies `f` to the eigenvalues of a positive semidefinite `m` that lie on
/// its support, maps the rest to zero, and reassembles `V f(Λ) V†`.
pub fn matrix_function(
    m: &HermitianMatrix,
    f: impl Fn(f64) -> f64,
    cutoff: SupportCutoff,
) -> Result<HermitianMatrix> {
    let eig = hermitian_eig(m)?;
    let threshold = eig.support_threshold(cutoff)?;
    Ok(eig.reconstruct_with(|l| {
        let l = l.max(0.0);
        if l >= threshold {
            f(l)
        } else {
            0.0
        }
    }))
}

/// Orthogonal projector onto the support of a positive semidefinite `m`.
pub fn support_projector(m: &HermitianMatrix, cutoff: SupportCutoff) -> Result<HermitianMatrix> {
    matrix_function(m, |_| 1.0, cutoff)
}
