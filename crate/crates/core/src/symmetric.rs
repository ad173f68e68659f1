//! Symmetric state families, their per-photon-number pure states, Gram
//! matrices, and circulant diagonalization by the discrete Fourier transform.
//!
//! Four-state families are always listed in the cyclic order `00, 01, 11, 10`
//! so that `|ψ_K⟩ = U^K |ψ_0⟩` and the Gram matrix is manifestly circulant.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{
    enumerate_subspace, hermitian_eig, ln_factorial, CMatrix, CoherentStateVector, FockIndex,
    HermitianMatrix, SubspaceBasis, PSD_TOLERANCE,
};

/// Tolerance for detecting the circulant pattern in a Gram matrix.
pub const CIRCULANT_TOLERANCE: f64 = 1e-12;
/// Largest accepted imaginary part of a circulant eigenvalue.
pub const EIGENVALUE_IMAG_TOLERANCE: f64 = 1e-10;
/// Allowed deviation of a state norm (and a Gram diagonal) from one.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;
/// Gram eigenvalues below this fraction of the largest one are rounding noise
/// and are set to zero before taking square roots.
pub const SPECTRAL_NOISE_FLOOR: f64 = 1e-13;

const TWO_BIT_LABELS: [&str; 4] = ["00", "01", "11", "10"];
/// `(b, c)` bits of the cyclic order `00, 01, 11, 10`.
const TWO_BIT_PAIRS: [(u32, u32); 4] = [(0, 0), (0, 1), (1, 1), (1, 0)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `|α,α⟩, |α,-α⟩`.
    TwoMode,
    /// `|α,α,α⟩, |α,α,-α⟩, |α,-α,-α⟩, |α,-α,α⟩`.
    ThreeMode,
    /// One sign flip cycling backwards through four modes.
    FourMode,
    /// `|α, i^K α⟩`.
    PhaseEncoded,
    /// Four non-orthogonal qutrit states.
    Qutrit,
    /// Four orthonormal ququart states.
    Ququart,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::TwoMode,
        Family::ThreeMode,
        Family::FourMode,
        Family::PhaseEncoded,
        Family::Qutrit,
        Family::Ququart,
    ];

    pub const COHERENT: [Family; 4] = [
        Family::TwoMode,
        Family::ThreeMode,
        Family::FourMode,
        Family::PhaseEncoded,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::TwoMode => "two_mode",
            Family::ThreeMode => "three_mode",
            Family::FourMode => "four_mode",
            Family::PhaseEncoded => "phase_encoded",
            Family::Qutrit => "qutrit",
            Family::Ququart => "ququart",
        }
    }

    /// Number of states `L`.
    pub fn num_states(self) -> usize {
        match self {
            Family::TwoMode => 2,
            _ => 4,
        }
    }

    /// Number of optical modes, `None` for the finite-dimensional families.
    pub fn modes(self) -> Option<usize> {
        match self {
            Family::TwoMode | Family::PhaseEncoded => Some(2),
            Family::ThreeMode => Some(3),
            Family::FourMode => Some(4),
            Family::Qutrit | Family::Ququart => None,
        }
    }

    pub fn is_coherent(self) -> bool {
        self.modes().is_some()
    }

    pub fn labels(self) -> &'static [&'static str] {
        match self {
            Family::TwoMode => &["0", "1"],
            _ => &TWO_BIT_LABELS,
        }
    }

    pub fn label_index(self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| *l == label)
    }

    fn require_coherent(self, what: &str) -> Result<usize> {
        self.modes().ok_or_else(|| Error::Unsupported {
            family: self.tag().into(),
            what: what.into(),
        })
    }

    /// Sign or phase of `⟨idx|ψ_K⟩` relative to the all-positive state, for the
    /// `K`-th member of a coherent family.
    pub fn fock_phase(self, state: usize, idx: &FockIndex) -> Result<Complex64> {
        let modes = self.require_coherent("Fock-space phases")?;
        if idx.modes() != modes {
            return Err(Error::DimensionMismatch {
                expected: modes,
                found: idx.modes(),
            });
        }
        if state >= self.num_states() {
            return Err(Error::InvalidArgument(format!(
                "state index {state} out of range for {}",
                self.tag()
            )));
        }
        let n = idx.occupations();
        let sign = |exponent: u32| if exponent.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(match self {
            Family::TwoMode => Complex64::new(sign(state as u32 * n[1]), 0.0),
            Family::ThreeMode => {
                let (b, c) = TWO_BIT_PAIRS[state];
                Complex64::new(sign(b * n[1] + c * n[2]), 0.0)
            }
            Family::FourMode => {
                let (b, c) = TWO_BIT_PAIRS[state];
                let (nb, nc) = (1 - b, 1 - c);
                let s = nb * nc * n[3] + nb * c * n[2] + b * c * n[1] + b * nc * n[0];
                Complex64::new(sign(s), 0.0)
            }
            Family::PhaseEncoded => {
                let (b, c) = TWO_BIT_PAIRS[state];
                let q = 2 * b * c + (1 - b) * c + 3 * b * (1 - c);
                i_power(q * n[1])
            }
            Family::Qutrit | Family::Ququart => unreachable!(),
        })
    }

    /// `U|idx⟩ = phase · |idx'⟩` for the family's symmetry unitary.
    pub fn symmetry_image(self, idx: &FockIndex) -> Result<(FockIndex, Complex64)> {
        let modes = self.require_coherent("a Fock-space symmetry operator")?;
        if idx.modes() != modes {
            return Err(Error::DimensionMismatch {
                expected: modes,
                found: idx.modes(),
            });
        }
        let n = idx.occupations();
        let one = Complex64::new(1.0, 0.0);
        Ok(match self {
            Family::TwoMode => (idx.clone(), if n[1].is_multiple_of(2) { one } else { -one }),
            // U = Σ (-1)^l |j,k,l⟩⟨j,l,k|
            Family::ThreeMode => (
                FockIndex::new(vec![n[0], n[2], n[1]]),
                if n[1].is_multiple_of(2) { one } else { -one },
            ),
            // U = Σ |j,k,l,m⟩⟨m,j,k,l|
            Family::FourMode => (FockIndex::new(vec![n[1], n[2], n[3], n[0]]), one),
            Family::PhaseEncoded => (idx.clone(), i_power(n[1])),
            Family::Qutrit | Family::Ququart => unreachable!(),
        })
    }

    /// Matrix of the symmetry unitary restricted to one photon-number subspace.
    pub fn symmetry_matrix(self, basis: &SubspaceBasis) -> Result<CMatrix> {
        let mut u = CMatrix::zeros(basis.dimension());
        for (col, idx) in basis.iter().enumerate() {
            let (image, phase) = self.symmetry_image(idx)?;
            let row = basis.index_of(&image).ok_or_else(|| {
                Error::InvalidArgument(format!("symmetry image {image} left the subspace"))
            })?;
            u[(row, col)] = phase;
        }
        Ok(u)
    }

    /// Amplitude vectors of the pure coherent states at real amplitude
    /// `alpha_abs`, in cyclic order.
    pub fn coherent_states(self, alpha_abs: f64) -> Result<Vec<CoherentStateVector>> {
        self.require_coherent("coherent amplitudes")?;
        check_amplitude(alpha_abs)?;
        let a = Complex64::new(alpha_abs, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let rows: Vec<Vec<Complex64>> = match self {
            Family::TwoMode => vec![vec![a, a], vec![a, -a]],
            Family::ThreeMode => vec![
                vec![a, a, a],
                vec![a, a, -a],
                vec![a, -a, -a],
                vec![a, -a, a],
            ],
            Family::FourMode => vec![
                vec![a, a, a, -a],
                vec![a, a, -a, a],
                vec![a, -a, a, a],
                vec![-a, a, a, a],
            ],
            Family::PhaseEncoded => vec![vec![a, a], vec![a, i * a], vec![a, -a], vec![a, -i * a]],
            Family::Qutrit | Family::Ququart => unreachable!(),
        };
        rows.into_iter().map(CoherentStateVector::new).collect()
    }

    /// State vectors of the finite-dimensional families.
    pub fn finite_states(self) -> Result<Vec<Vec<Complex64>>> {
        let rows: Vec<Vec<f64>> = match self {
            Family::Qutrit => {
                let s = 1.0 / 3f64.sqrt();
                vec![
                    vec![s, s, s],
                    vec![s, s, -s],
                    vec![s, -s, -s],
                    vec![s, -s, s],
                ]
            }
            Family::Ququart => vec![
                vec![0.5, 0.5, 0.5, -0.5],
                vec![0.5, 0.5, -0.5, 0.5],
                vec![0.5, -0.5, 0.5, 0.5],
                vec![-0.5, 0.5, 0.5, 0.5],
            ],
            other => {
                return Err(Error::Unsupported {
                    family: other.tag().into(),
                    what: "finite-dimensional state vectors".into(),
                })
            }
        };
        Ok(rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
            .collect())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

fn i_power(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

pub(crate) fn check_amplitude(alpha_abs: f64) -> Result<()> {
    if !(alpha_abs.is_finite() && alpha_abs >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "|α| must be finite and non-negative, got {alpha_abs}"
        )));
    }
    Ok(())
}

/// A family together with the coherent amplitude `|α|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricFamilySpec {
    pub family: Family,
    /// Ignored by the qutrit and ququart families.
    pub amplitude: f64,
}

impl SymmetricFamilySpec {
    pub fn new(family: Family, amplitude: f64) -> Result<Self> {
        check_amplitude(amplitude)?;
        Ok(Self { family, amplitude })
    }

    pub fn num_states(&self) -> usize {
        self.family.num_states()
    }

    /// `Σ_m |α_m|²` of every member.
    pub fn mean_photons(&self) -> Result<f64> {
        let modes = self.family.require_coherent("a mean photon number")?;
        Ok(modes as f64 * self.amplitude * self.amplitude)
    }

    pub fn coherent_states(&self) -> Result<Vec<CoherentStateVector>> {
        self.family.coherent_states(self.amplitude)
    }
}

/// The `L` normalized pure states of one photon-number subspace.
#[derive(Clone, Debug)]
pub struct SubspaceStates {
    pub basis: SubspaceBasis,
    pub states: Vec<Vec<Complex64>>,
}

/// Per-subspace pure states with the explicit sign/phase factors of each
/// family, normalized by `M_N = M^N / N!`.
pub fn subspace_states(spec: &SymmetricFamilySpec, photons: u32) -> Result<SubspaceStates> {
    let modes = spec.family.require_coherent("photon-number subspaces")?;
    let basis = enumerate_subspace(modes, photons)?;
    let ln_norm = f64::from(photons) * (modes as f64).ln() - ln_factorial(photons);
    let magnitudes: Vec<f64> = basis
        .iter()
        .map(|idx| (-0.5 * (idx.ln_factorial_product() + ln_norm)).exp())
        .collect();
    let states = (0..spec.num_states())
        .map(|k| {
            basis
                .iter()
                .zip(&magnitudes)
                .map(|(idx, &m)| Ok(spec.family.fock_phase(k, idx)? * m))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubspaceStates { basis, states })
}

/// `Σ_{n_1+...+n_M=N} 1/(n_1!...n_M!)`, summed over the enumerated basis.
pub fn multinomial_normalization(basis: &SubspaceBasis) -> f64 {
    basis.iter().map(|idx| (-idx.ln_factorial_product()).exp()).sum()
}

/// Pairwise overlaps `G_ij = ⟨ψ_i|ψ_j⟩` of a state family.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    entries: CMatrix,
    generator_row: Option<Vec<Complex64>>,
}

impl GramMatrix {
    /// Validates Hermiticity and unit diagonal; detects circulant structure.
    pub fn from_matrix(entries: CMatrix) -> Result<Self> {
        let h = HermitianMatrix::new(entries)?;
        let entries = h.into_matrix();
        for i in 0..entries.dim() {
            let d = entries[(i, i)].re;
            if (d - 1.0).abs() > 10.0 * NORMALIZATION_TOLERANCE {
                return Err(Error::InconsistentGram(format!("diagonal entry {i} is {d}, not 1")));
            }
        }
        let generator_row = detect_circulant(&entries);
        Ok(Self {
            entries,
            generator_row,
        })
    }

    /// `circ(c_0, ..., c_{L-1})`: entry `(i, k)` is `c_{(k-i) mod L}`.
    pub fn circulant(row: &[Complex64]) -> Result<Self> {
        let l = row.len();
        let entries = CMatrix::from_fn(l, |i, k| row[(k + l - i) % l]);
        Self::from_matrix(entries)
    }

    pub fn size(&self) -> usize {
        self.entries.dim()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn is_circulant(&self) -> bool {
        self.generator_row.is_some()
    }

    pub fn generator_row(&self) -> Option<&[Complex64]> {
        self.generator_row.as_deref()
    }

    pub fn to_hermitian(&self) -> HermitianMatrix {
        HermitianMatrix::hermitian_part(&self.entries)
    }
}

fn detect_circulant(entries: &CMatrix) -> Option<Vec<Complex64>> {
    let l = entries.dim();
    let row: Vec<Complex64> = entries.row(0).to_vec();
    for i in 0..l {
        for k in 0..l {
            if (entries[(i, k)] - row[(k + l - i) % l]).norm() > CIRCULANT_TOLERANCE {
                return None;
            }
        }
    }
    Some(row)
}

/// Gram matrix of equal-length, normalized state vectors.
pub fn gram_matrix(states: &[Vec<Complex64>]) -> Result<GramMatrix> {
    let dim = states
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::InvalidArgument("Gram matrix of an empty family".into()))?;
    for s in states {
        if s.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.len(),
            });
        }
        let norm2: f64 = s.iter().map(|z| z.norm_sqr()).sum();
        if (norm2.sqrt() - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidArgument(format!("state norm {} is not 1", norm2.sqrt())));
        }
    }
    let entries = CMatrix::from_fn(states.len(), |i, j| inner(&states[i], &states[j]));
    GramMatrix::from_matrix(entries)
}

/// `⟨a|b⟩`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `λ_k = Σ_l c_l ω^{kl}`, `ω = e^{2πi/L}`, for a circulant Gram matrix.
pub fn circulant_eigenvalues(g: &GramMatrix) -> Result<Vec<f64>> {
    let row = g
        .generator_row()
        .ok_or_else(|| Error::InconsistentGram("matrix is not circulant".into()))?;
    let l = row.len();
    (0..l)
        .map(|k| {
            let lambda: Complex64 = row
                .iter()
                .enumerate()
                .map(|(j, c)| c * Complex64::from_polar(1.0, 2.0 * PI * ((k * j) % l) as f64 / l as f64))
                .sum();
            if lambda.im.abs() >= EIGENVALUE_IMAG_TOLERANCE {
                return Err(Error::InconsistentGram(format!(
                    "eigenvalue {k} has imaginary part {:.3e}",
                    lambda.im
                )));
            }
            clip_eigenvalue(lambda.re)
        })
        .collect()
}

fn clip_eigenvalue(lambda: f64) -> Result<f64> {
    if lambda < -PSD_TOLERANCE {
        return Err(Error::InconsistentGram(format!("negative eigenvalue {lambda:.3e}")));
    }
    Ok(lambda.max(0.0))
}

/// Eigenvalues of `g`, from the DFT when circulant and the Jacobi solver
/// otherwise, with rounding noise below [`SPECTRAL_NOISE_FLOOR`] zeroed.
pub fn gram_eigenvalues(g: &GramMatrix) -> Result<Vec<f64>> {
    let mut lambda = if g.is_circulant() {
        circulant_eigenvalues(g)?
    } else {
        hermitian_eig(&g.to_hermitian())?
            .eigenvalues
            .into_iter()
            .map(clip_eigenvalue)
            .collect::<Result<Vec<_>>>()?
    };
    let floor = SPECTRAL_NOISE_FLOOR * lambda.iter().cloned().fold(0.0, f64::max);
    for l in &mut lambda {
        if *l < floor {
            *l = 0.0;
        }
    }
    Ok(lambda)
}

/// Square-root measurement success for equiprobable pure states,
/// `(1/L²)(Σ_i √λ_i)²`.
pub fn srm_success_from_gram(g: &GramMatrix) -> Result<f64> {
    let l = g.size() as f64;
    let s: f64 = gram_eigenvalues(g)?.iter().map(|x| x.sqrt()).sum();
    Ok(s * s / (l * l))
}
