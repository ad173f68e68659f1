//! Square-root versus Helstrom measurement for the phase-randomized two-mode
//! pair, written in the basis behind a balanced beam splitter where the two
//! states occupy `|N,0⟩` and `|0,N⟩` and share only the vacuum.

use num_complex::Complex64;

use super::{helstrom_two, srm, Povm};
use crate::error::Result;
use crate::fock::{CMatrix, HermitianMatrix};
use crate::optics::{apply_circuit, LinearCircuit};
use crate::phase_rand::phase_randomize;
use crate::symmetric::{check_amplitude, Family};

#[derive(Clone, Debug)]
pub struct AppendixBReport {
    pub alpha_abs: f64,
    pub p0: f64,
    pub n_max: u32,
    pub srm_success: f64,
    pub helstrom_success: f64,
    /// Largest Frobenius distance between matching SRM and Helstrom elements
    /// on the support of `ρ` with the vacuum removed.
    pub off_vacuum_distance: f64,
    /// `⟨0,0|π_k|0,0⟩` of the SRM elements.
    pub srm_vacuum_split: [f64; 2],
    /// `⟨0,0|Π_k|0,0⟩` of the Helstrom elements.
    pub helstrom_vacuum_split: [f64; 2],
    /// Success difference attributable to the vacuum alone,
    /// `Σ_k p_k ⟨0|ρ_k|0⟩ (⟨0|Π_k|0⟩ - ⟨0|π_k|0⟩)`.
    pub vacuum_gap: f64,
    pub srm: Povm,
    pub helstrom: Povm,
}

impl AppendixBReport {
    /// Helstrom minus SRM success.
    pub fn success_gap(&self) -> f64 {
        self.helstrom_success - self.srm_success
    }
}

/// Builds both measurements and their comparison at one `(|α|, p_0)` pair.
pub fn verify_appendix_b(alpha_abs: f64, p0: f64, n_max: u32) -> Result<AppendixBReport> {
    check_amplitude(alpha_abs)?;
    let p1 = 1.0 - p0;
    let bs = LinearCircuit::bs2();
    let states = Family::TwoMode
        .coherent_states(alpha_abs)?
        .iter()
        .map(|s| {
            let out = apply_circuit(&bs, s)?;
            let rho = phase_randomize(&out, n_max)?.to_dense();
            let t = rho.trace();
            Ok(rho.scale(1.0 / t))
        })
        .collect::<Result<Vec<_>>>()?;
    let (srm_povm, srm_success) = srm(&states, &[p0, p1])?;
    let (hel_povm, helstrom_success) = helstrom_two(&states[0], &states[1], p0)?;

    // Vacuum is the first basis vector of the direct sum.
    let dim = states[0].dim();
    let mut vac = vec![Complex64::new(0.0, 0.0); dim];
    vac[0] = Complex64::new(1.0, 0.0);
    let vac_proj = HermitianMatrix::projector(&vac);
    let off_vacuum = srm_povm.support_projector.sub(&vac_proj)?;
    let mut off_vacuum_distance: f64 = 0.0;
    for (a, b) in srm_povm.elements.iter().zip(&hel_povm.elements) {
        let diff = a.sub(b)?;
        let restricted = restrict(&off_vacuum, &diff)?;
        off_vacuum_distance = off_vacuum_distance.max(restricted.frobenius_norm());
    }
    let corner = |m: &HermitianMatrix| m[(0, 0)].re;
    let srm_vacuum_split = [corner(&srm_povm.elements[0]), corner(&srm_povm.elements[1])];
    let helstrom_vacuum_split = [corner(&hel_povm.elements[0]), corner(&hel_povm.elements[1])];
    let vacuum_gap = [p0, p1]
        .iter()
        .enumerate()
        .map(|(k, p)| p * corner(&states[k]) * (helstrom_vacuum_split[k] - srm_vacuum_split[k]))
        .sum();
    Ok(AppendixBReport {
        alpha_abs,
        p0,
        n_max,
        srm_success,
        helstrom_success,
        off_vacuum_distance,
        srm_vacuum_split,
        helstrom_vacuum_split,
        vacuum_gap,
        srm: srm_povm,
        helstrom: hel_povm,
    })
}

/// `P m P` for a projector `P`.
fn restrict(p: &HermitianMatrix, m: &HermitianMatrix) -> Result<CMatrix> {
    p.matrix().matmul(m.matrix())?.matmul(p.matrix())
}
