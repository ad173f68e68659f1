//! Truncated Fock-space numerics.
//!
//! Occupation-number bases of fixed total photon number, coherent-state
//! amplitudes in those bases, and the dense Hermitian linear algebra the rest
//! of the crate builds on.

mod eigen;
mod matrix;

pub use eigen::{
    hermitian_eig, hermitian_eig_with, matrix_function, support_projector, EigenConfig,
    SpectralDecomposition, SupportCutoff, PSD_TOLERANCE,
};
pub use matrix::{BlockDiagonal, CMatrix, HermitianMatrix, HERMITICITY_TOLERANCE};

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on the dimension of an enumerated photon-number subspace.
pub const DEFAULT_DIMENSION_CAP: usize = 2_000_000;

/// Largest `n` served from the cached log-factorial table.
pub const LN_FACTORIAL_TABLE_MAX: usize = 1024;

/// `ln(n!)`, from a cached table up to [`LN_FACTORIAL_TABLE_MAX`] and a
/// Stirling series above it.
pub fn ln_factorial(n: u32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACTORIAL_TABLE_MAX + 1);
        t.push(0.0);
        let mut acc = 0.0f64;
        for k in 1..=LN_FACTORIAL_TABLE_MAX {
            acc += (k as f64).ln();
            t.push(acc);
        }
        t
    });
    match table.get(n as usize) {
        Some(v) => *v,
        None => {
            let x = f64::from(n) + 1.0;
            // ln Γ(x), x > 1000: the 1/x^5 term is already below 1e-17.
            (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
                - 1.0 / (360.0 * x.powi(3))
        }
    }
}

/// Poisson probability `e^{-mean} mean^n / n!`.
pub fn poisson_weight(mean: f64, n: u32) -> f64 {
    if mean == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    (-mean + f64::from(n) * mean.ln() - ln_factorial(n)).exp()
}

/// Occupation numbers `(n_1, ..., n_M)` of a multi-mode Fock state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockIndex {
    occupations: Vec<u32>,
}

impl FockIndex {
    pub fn new(occupations: Vec<u32>) -> Self {
        Self { occupations }
    }

    pub fn occupations(&self) -> &[u32] {
        &self.occupations
    }

    pub fn modes(&self) -> usize {
        self.occupations.len()
    }

    pub fn total(&self) -> u32 {
        self.occupations.iter().sum()
    }

    /// `Σ_m ln(n_m!)`.
    pub fn ln_factorial_product(&self) -> f64 {
        self.occupations.iter().map(|&n| ln_factorial(n)).sum()
    }
}

impl fmt::Display for FockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, n) in self.occupations.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "⟩")
    }
}

impl From<Vec<u32>> for FockIndex {
    fn from(occupations: Vec<u32>) -> Self {
        Self::new(occupations)
    }
}

/// Number of `modes`-tuples of non-negative integers summing to `photons`,
/// `C(N+M-1, M-1)`. `None` on `u128` overflow.
pub fn subspace_dimension(modes: usize, photons: u32) -> Option<u128> {
    if modes == 0 {
        return None;
    }
    let k = (modes - 1) as u128;
    let n = u128::from(photons) + k;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.checked_mul(n - k + i)? / i;
    }
    Some(acc)
}

/// All occupation tuples of a fixed total photon number, in lexicographically
/// descending order.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    modes: usize,
    photons: u32,
    states: Vec<FockIndex>,
    lookup: HashMap<FockIndex, usize>,
}

impl SubspaceBasis {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn photons(&self) -> u32 {
        self.photons
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[FockIndex] {
        &self.states
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FockIndex> {
        self.states.iter()
    }

    pub fn index_of(&self, idx: &FockIndex) -> Option<usize> {
        self.lookup.get(idx).copied()
    }
}

impl<'a> IntoIterator for &'a SubspaceBasis {
    type Item = &'a FockIndex;
    type IntoIter = std::slice::Iter<'a, FockIndex>;

    fn into_iter(self) -> Self::IntoIter {
        self.states.iter()
    }
}

/// Enumerates the `photons`-photon subspace of `modes` modes with the default
/// dimension cap.
pub fn enumerate_subspace(modes: usize, photons: u32) -> Result<SubspaceBasis> {
    enumerate_subspace_capped(modes, photons, DEFAULT_DIMENSION_CAP)
}

pub fn enumerate_subspace_capped(modes: usize, photons: u32, cap: usize) -> Result<SubspaceBasis> {
    if modes == 0 {
        return Err(Error::InvalidArgument("a subspace needs at least one mode".into()));
    }
    let dim = subspace_dimension(modes, photons).unwrap_or(u128::MAX);
    if dim > cap as u128 {
        return Err(Error::Capacity {
            what: "photon-number subspace dimension",
            requested: dim,
            cap: cap as u128,
        });
    }

    let mut states = Vec::with_capacity(dim as usize);
    let mut current = vec![0u32; modes];
    fill(&mut current, 0, photons, &mut states);
    debug_assert_eq!(states.len() as u128, dim);

    let lookup = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(SubspaceBasis {
        modes,
        photons,
        states,
        lookup,
    })
}

fn fill(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<FockIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(FockIndex::new(current.to_vec()));
        return;
    }
    for n in (0..=remaining).rev() {
        current[pos] = n;
        fill(current, pos + 1, remaining - n, out);
    }
}

/// Amplitudes `α_1, ..., α_M` of a pure multi-mode coherent state.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentStateVector {
    amplitudes: Vec<Complex64>,
    mean_photons: f64,
}

impl CoherentStateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument("coherent state needs at least one mode".into()));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite("coherent amplitudes"));
        }
        let mean_photons = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        Ok(Self {
            amplitudes,
            mean_photons,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn modes(&self) -> usize {
        self.amplitudes.len()
    }

    /// `⟨N⟩ = Σ |α_m|²`.
    pub fn mean_photons(&self) -> f64 {
        self.mean_photons
    }

    /// `⟨self|other⟩ = exp(Σ_m [-|α_m|²/2 - |β_m|²/2 + conj(α_m) β_m])`.
    pub fn overlap(&self, other: &CoherentStateVector) -> Result<Complex64> {
        if self.modes() != other.modes() {
            return Err(Error::DimensionMismatch {
                expected: self.modes(),
                found: other.modes(),
            });
        }
        let exponent: Complex64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            - 0.5 * (self.mean_photons + other.mean_photons);
        Ok(exponent.exp())
    }
}

/// `⟨n_1..n_M|α_1..α_M⟩ = e^{-Σ|α_m|²/2} Π_m α_m^{n_m} / √(n_m!)`, evaluated in
/// log-magnitude and phase form.
pub fn coherent_amplitude(alpha: &CoherentStateVector, idx: &FockIndex) -> Result<Complex64> {
    if alpha.modes() != idx.modes() {
        return Err(Error::DimensionMismatch {
            expected: alpha.modes(),
            found: idx.modes(),
        });
    }
    let mut log_mag = -0.5 * alpha.mean_photons();
    let mut phase = 0.0;
    for (a, &n) in alpha.amplitudes().iter().zip(idx.occupations()) {
        if n == 0 {
            continue;
        }
        let r = a.norm();
        if r == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let n_f = f64::from(n);
        log_mag += n_f * r.ln() - 0.5 * ln_factorial(n);
        phase += n_f * a.arg();
    }
    let value = Complex64::from_polar(log_mag.exp(), phase);
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::NonFinite("coherent_amplitude"));
    }
    Ok(value)
}

/// Amplitudes of `alpha` over every basis state of `basis`, in basis order.
pub fn coherent_amplitudes(alpha: &CoherentStateVector, basis: &SubspaceBasis) -> Result<Vec<Complex64>> {
    basis.iter().map(|idx| coherent_amplitude(alpha, idx)).collect()
}
