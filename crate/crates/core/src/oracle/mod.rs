//! Brute-force measurements on dense truncated-Fock matrices.
//!
//! Nothing in here consults a closed-form probability. States are built from
//! coherent amplitudes in the Fock basis, and measurements come from explicit
//! spectral decompositions.
//!
//! Photon-number blocks of the families grow quickly (a four-mode block at
//! `N = 29` has 4960 dimensions), while every operator involved lives in the
//! span of at most `L` state vectors. [`compress`] re-expresses a block in an
//! orthonormal basis of that span, which leaves every trace, overlap and
//! measurement statistic unchanged and keeps the dense matrices small.

mod appendix_b;
mod report;
mod suites;

use num_complex::Complex64;

pub use appendix_b::{verify_appendix_b, AppendixBReport};
pub use report::{CheckResult, Report, Suite};
pub use suites::run_suite;

use crate::error::{Error, Result};
use crate::fock::{
    coherent_amplitudes, enumerate_subspace, hermitian_eig, CMatrix, HermitianMatrix,
    SupportCutoff,
};
use crate::phase_rand::PoissonTruncation;
use crate::symmetric::{Family, SymmetricFamilySpec};

/// Tolerance on POVM positivity.
pub const POVM_PSD_TOLERANCE: f64 = 1e-9;
/// Tolerance on POVM completeness (Frobenius).
pub const POVM_COMPLETENESS_TOLERANCE: f64 = 1e-9;
/// Eigenvalues of `p_0 ρ_0 - p_1 ρ_1` within this of zero form the kernel.
pub const HELSTROM_THRESHOLD: f64 = 1e-12;
/// Residual norm, relative to the input, below which a vector is taken to lie
/// in the span already collected.
pub const SPAN_TOLERANCE: f64 = 1e-10;

/// A measurement, complete on the given support.
#[derive(Clone, Debug)]
pub struct Povm {
    pub elements: Vec<HermitianMatrix>,
    pub support_projector: HermitianMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PovmDiagnostics {
    pub min_eigenvalue: f64,
    pub completeness_error: f64,
}

impl Povm {
    pub fn diagnostics(&self) -> Result<PovmDiagnostics> {
        let mut min_eigenvalue = f64::INFINITY;
        for e in &self.elements {
            let eig = hermitian_eig(e)?;
            min_eigenvalue = min_eigenvalue.min(eig.eigenvalues.last().copied().unwrap_or(0.0));
        }
        let ones = vec![1.0; self.elements.len()];
        let sum = HermitianMatrix::weighted_sum(&ones, &self.elements)?;
        let completeness_error = sum.sub(&self.support_projector)?.frobenius_norm();
        Ok(PovmDiagnostics {
            min_eigenvalue,
            completeness_error,
        })
    }

    /// Fails when an element is not positive or the elements do not add up to
    /// the support projector.
    pub fn validate(&self) -> Result<PovmDiagnostics> {
        let d = self.diagnostics()?;
        if d.min_eigenvalue < -POVM_PSD_TOLERANCE {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: d.min_eigenvalue,
            });
        }
        if d.completeness_error > POVM_COMPLETENESS_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "POVM elements miss the support projector by {:.3e}",
                d.completeness_error
            )));
        }
        Ok(d)
    }

    /// `Σ_i p_i tr(ρ_i Π_i)`.
    pub fn success(&self, states: &[HermitianMatrix], priors: &[f64]) -> Result<f64> {
        if states.len() != self.elements.len() || priors.len() != states.len() {
            return Err(Error::DimensionMismatch {
                expected: self.elements.len(),
                found: states.len().min(priors.len()),
            });
        }
        let mut p = 0.0;
        for ((rho, &w), e) in states.iter().zip(priors).zip(&self.elements) {
            p += w * rho.trace_product(e)?;
        }
        Ok(p)
    }
}

fn check_ensemble(states: &[HermitianMatrix], priors: &[f64]) -> Result<usize> {
    let dim = states
        .first()
        .map(HermitianMatrix::dim)
        .ok_or_else(|| Error::InvalidArgument("empty ensemble".into()))?;
    if priors.len() != states.len() {
        return Err(Error::DimensionMismatch {
            expected: states.len(),
            found: priors.len(),
        });
    }
    if priors.iter().any(|p| !(*p >= 0.0)) || (priors.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument("priors must be non-negative and sum to 1".into()));
    }
    for s in states {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.dim(),
            });
        }
        if (s.trace() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("state trace {} is not 1", s.trace())));
        }
    }
    Ok(dim)
}

/// Square-root measurement `π_i = ρ^{-1/2} p_i ρ_i ρ^{-1/2}` with
/// `ρ = Σ p_i ρ_i`, and its success probability.
pub fn srm(states: &[HermitianMatrix], priors: &[f64]) -> Result<(Povm, f64)> {
    check_ensemble(states, priors)?;
    let rho = HermitianMatrix::weighted_sum(priors, states)?;
    let eig = hermitian_eig(&rho)?;
    let threshold = eig.support_threshold(SupportCutoff::default())?;
    let on_support = |l: f64| l.max(0.0) >= threshold;
    let inv_sqrt = eig.reconstruct_with(|l| if on_support(l) { 1.0 / l.sqrt() } else { 0.0 });
    let support_projector = eig.reconstruct_with(|l| if on_support(l) { 1.0 } else { 0.0 });
    let elements = states
        .iter()
        .zip(priors)
        .map(|(s, &p)| inv_sqrt.sandwich(&s.scale(p)))
        .collect::<Result<Vec<_>>>()?;
    let povm = Povm {
        elements,
        support_projector,
    };
    let success = povm.success(states, priors)?;
    Ok((povm, success))
}

/// Minimum-error measurement for two states: projectors onto the positive and
/// negative eigenspaces of `p_0 ρ_0 - p_1 ρ_1`, with the kernel given to the
/// likelier state (state 0 on a tie).
pub fn helstrom_two(rho0: &HermitianMatrix, rho1: &HermitianMatrix, p0: f64) -> Result<(Povm, f64)> {
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(Error::InvalidArgument(format!("prior must lie in (0, 1), got {p0}")));
    }
    let p1 = 1.0 - p0;
    let delta = rho0.scale(p0).sub(&rho1.scale(p1))?;
    let eig = hermitian_eig(&delta)?;
    let kernel_to_zero = p0 >= p1;
    let to_zero = |l: f64| l > HELSTROM_THRESHOLD || (l.abs() <= HELSTROM_THRESHOLD && kernel_to_zero);
    let pi0 = eig.reconstruct_with(|l| if to_zero(l) { 1.0 } else { 0.0 });
    let pi1 = eig.reconstruct_with(|l| if to_zero(l) { 0.0 } else { 1.0 });
    let gain: f64 = eig.eigenvalues.iter().filter(|&&l| to_zero(l)).sum();
    let povm = Povm {
        elements: vec![pi0, pi1],
        support_projector: HermitianMatrix::identity(delta.dim()),
    };
    Ok((povm, p1 + gain))
}

/// `Σ_N p_N · SRM success of block N`: count photons first, then run the SRM
/// inside the observed subspace.
pub fn block_srm(blocks: &[Vec<HermitianMatrix>], weights: &[f64], priors: &[f64]) -> Result<f64> {
    if blocks.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: blocks.len(),
            found: weights.len(),
        });
    }
    blocks
        .iter()
        .zip(weights)
        .map(|(states, w)| Ok(w * srm(states, priors)?.1))
        .sum()
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Coordinates of `vectors` in an orthonormal basis of their span, built by
/// modified Gram-Schmidt with one reorthogonalization pass.
pub fn compress(vectors: &[Vec<Complex64>]) -> Result<Vec<Vec<Complex64>>> {
    let dim = vectors.first().map(Vec::len).unwrap_or(0);
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let norm = inner(v, v).re.sqrt();
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = inner(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let residual = inner(&w, &w).re.sqrt();
        if residual > SPAN_TOLERANCE * norm {
            basis.push(w.into_iter().map(|z| z / residual).collect());
        }
    }
    Ok(vectors
        .iter()
        .map(|v| basis.iter().map(|q| inner(q, v)).collect())
        .collect())
}

/// Per-photon-number components of a phase-randomized family, compressed to
/// the span of each block.
#[derive(Clone, Debug)]
pub struct CompressedEnsemble {
    pub weights: Vec<f64>,
    /// `blocks[N][K]`: normalized component of state `K` in block `N`.
    pub blocks: Vec<Vec<Vec<Complex64>>>,
    pub tail_mass: f64,
}

impl CompressedEnsemble {
    /// Builds blocks `0..=n_max` from the Fock amplitudes of each coherent
    /// state. `tail_mass` is left at zero.
    pub fn truncated(spec: &SymmetricFamilySpec, n_max: u32) -> Result<Self> {
        let states = spec.coherent_states()?;
        let modes = states[0].modes();
        let mut weights = Vec::new();
        let mut blocks = Vec::new();
        for n in 0..=n_max {
            let basis = enumerate_subspace(modes, n)?;
            let mut raw = Vec::with_capacity(states.len());
            let mut weight = None;
            for s in &states {
                let amps = coherent_amplitudes(s, &basis)?;
                let w: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
                match weight {
                    None => weight = Some(w),
                    Some(w0) if (w - w0).abs() > 1e-12 * w0.max(f64::MIN_POSITIVE) => {
                        return Err(Error::InvalidArgument(format!(
                            "family members carry different photon-number weights at N = {n}"
                        )))
                    }
                    _ => {}
                }
                raw.push(amps);
            }
            let w = weight.unwrap_or(0.0);
            if w == 0.0 {
                // Only the vacuum block survives at |α| = 0.
                break;
            }
            let norm = w.sqrt();
            let normalized: Vec<Vec<Complex64>> = raw
                .into_iter()
                .map(|v| v.into_iter().map(|z| z / norm).collect())
                .collect();
            weights.push(w);
            blocks.push(compress(&normalized)?);
        }
        Ok(Self {
            weights,
            blocks,
            tail_mass: 0.0,
        })
    }

    /// Truncates where the photon-number tail drops below `tail_tol`.
    pub fn new(spec: &SymmetricFamilySpec, tail_tol: f64) -> Result<Self> {
        let t = PoissonTruncation::new(spec.mean_photons()?, tail_tol)?;
        let mut e = Self::truncated(spec, t.n_max())?;
        e.tail_mass = 1.0 - e.weights.iter().sum::<f64>();
        Ok(e)
    }

    pub fn num_states(&self) -> usize {
        self.blocks.first().map(Vec::len).unwrap_or(0)
    }

    /// Normalized rank-one states of every block.
    pub fn block_states(&self) -> Vec<Vec<HermitianMatrix>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|v| HermitianMatrix::projector(v)).collect())
            .collect()
    }

    /// The mixed state of member `k` as one block-diagonal matrix, renormalized
    /// to unit trace over the kept blocks.
    pub fn whole_state(&self, k: usize) -> HermitianMatrix {
        let dim: usize = self.blocks.iter().map(|b| b[k].len()).sum();
        let total: f64 = self.weights.iter().sum();
        let mut m = CMatrix::zeros(dim);
        let mut offset = 0;
        for (b, w) in self.blocks.iter().zip(&self.weights) {
            let v = &b[k];
            for (i, vi) in v.iter().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    m[(offset + i, offset + j)] = vi * vj.conj() * (w / total);
                }
            }
            offset += v.len();
        }
        HermitianMatrix::hermitian_part(&m)
    }

    pub fn whole_states(&self) -> Vec<HermitianMatrix> {
        (0..self.num_states()).map(|k| self.whole_state(k)).collect()
    }

    /// Block-by-block SRM, weighted by the photon-number distribution.
    pub fn block_srm(&self, priors: &[f64]) -> Result<f64> {
        block_srm(&self.block_states(), &self.weights, priors)
    }

    /// One SRM on the full block-diagonal states, rescaled to the kept mass.
    pub fn whole_srm(&self, priors: &[f64]) -> Result<f64> {
        let total: f64 = self.weights.iter().sum();
        Ok(total * srm(&self.whole_states(), priors)?.1)
    }
}

/// The pure states of a family, truncated in photon number and compressed to
/// their joint span.
pub fn pure_family_vectors(spec: &SymmetricFamilySpec, tail_tol: f64) -> Result<Vec<Vec<Complex64>>> {
    let states = spec.coherent_states()?;
    let t = PoissonTruncation::new(spec.mean_photons()?, tail_tol)?;
    let modes = states[0].modes();
    let mut full: Vec<Vec<Complex64>> = vec![Vec::new(); states.len()];
    for n in 0..=t.n_max() {
        let basis = enumerate_subspace(modes, n)?;
        for (s, v) in states.iter().zip(full.iter_mut()) {
            v.extend(coherent_amplitudes(s, &basis)?);
        }
    }
    for v in &mut full {
        let norm = inner(v, v).re.sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
    }
    compress(&full)
}

fn equal_priors(l: usize) -> Vec<f64> {
    vec![1.0 / l as f64; l]
}

/// SRM success on the truncated pure states of a family.
pub fn pure_family_srm(spec: &SymmetricFamilySpec, tail_tol: f64) -> Result<f64> {
    let projectors: Vec<HermitianMatrix> = pure_family_vectors(spec, tail_tol)?
        .iter()
        .map(|v| HermitianMatrix::projector(v))
        .collect();
    Ok(srm(&projectors, &equal_priors(projectors.len()))?.1)
}

/// SRM success on explicit finite-dimensional state vectors, equal priors.
pub fn finite_family_srm(family: Family) -> Result<f64> {
    let projectors: Vec<HermitianMatrix> = family
        .finite_states()?
        .iter()
        .map(|v| HermitianMatrix::projector(v))
        .collect();
    Ok(srm(&projectors, &equal_priors(projectors.len()))?.1)
}

/// Which bit of a two-bit label the receiver reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bit {
    First,
    Second,
}

impl Bit {
    /// Members (in cyclic order `00, 01, 11, 10`) whose chosen bit is 0, then 1.
    fn partition(self) -> ([usize; 2], [usize; 2]) {
        match self {
            Bit::First => ([0, 1], [2, 3]),
            Bit::Second => ([0, 3], [1, 2]),
        }
    }
}

fn half_sum(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    Ok(a.add(b)?.scale(0.5))
}

fn one_bit_helstrom(states: &[HermitianMatrix], bit: Bit) -> Result<f64> {
    if states.len() != 4 {
        return Err(Error::InvalidArgument("one-bit readout needs a four-state family".into()));
    }
    let (zero, one) = bit.partition();
    let rho0 = half_sum(&states[zero[0]], &states[zero[1]])?;
    let rho1 = half_sum(&states[one[0]], &states[one[1]])?;
    Ok(helstrom_two(&rho0, &rho1, 0.5)?.1)
}

/// Helstrom success for one bit of the phase-randomized family.
pub fn mixed_p1bit(spec: &SymmetricFamilySpec, bit: Bit, tail_tol: f64) -> Result<f64> {
    let e = CompressedEnsemble::new(spec, tail_tol)?;
    let total: f64 = e.weights.iter().sum();
    Ok(total * one_bit_helstrom(&e.whole_states(), bit)?)
}

/// Helstrom success for one bit of the pure family.
pub fn pure_p1bit(spec: &SymmetricFamilySpec, bit: Bit, tail_tol: f64) -> Result<f64> {
    let projectors: Vec<HermitianMatrix> = pure_family_vectors(spec, tail_tol)?
        .iter()
        .map(|v| HermitianMatrix::projector(v))
        .collect();
    one_bit_helstrom(&projectors, bit)
}
