//! Photon-number decomposition of phase-randomized multi-mode coherent states.
//!
//! Averaging `|α⟩⟨α|` over a global phase keeps only matrix elements with equal
//! total photon number on both sides, so the result is a direct sum over `N`
//! of rank-one blocks `p_N |φ_N⟩⟨φ_N|`. The selection rule is applied exactly;
//! nothing here integrates over the phase numerically.

use num_complex::Complex64;

pub use crate::fock::CoherentStateVector;
use crate::error::{Error, Result};
use crate::fock::{
    coherent_amplitudes, enumerate_subspace, poisson_weight, subspace_dimension, BlockDiagonal,
    HermitianMatrix,
};
use crate::symmetric::{gram_matrix, subspace_states, GramMatrix, SymmetricFamilySpec};

/// Largest photon number a truncation may reach.
pub const N_MAX_HARD_CAP: u32 = 150;
/// Largest single subspace materialized as a dense block.
pub const DENSE_BLOCK_CAP: usize = 4096;

/// `Σ_{k>n} p_k` for a Poisson distribution, summed upward so small tails keep
/// full relative precision.
pub fn poisson_tail(mean: f64, n: u32) -> f64 {
    if mean == 0.0 {
        return 0.0;
    }
    let mut k = n + 1;
    let mut term = poisson_weight(mean, k);
    let mut sum = 0.0;
    loop {
        sum += term;
        k += 1;
        term *= mean / f64::from(k);
        if (f64::from(k) > mean && term <= sum * f64::EPSILON) || term == 0.0 {
            break;
        }
    }
    sum
}

/// Poisson weights `p_0..p_{n_max}` with `n_max` the smallest `N` whose tail
/// beyond `N` is below `tail_tol`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonTruncation {
    pub mean: f64,
    pub weights: Vec<f64>,
    pub tail_mass: f64,
}

impl PoissonTruncation {
    pub fn new(mean: f64, tail_tol: f64) -> Result<Self> {
        Self::with_cap(mean, tail_tol, N_MAX_HARD_CAP)
    }

    pub fn with_cap(mean: f64, tail_tol: f64, cap: u32) -> Result<Self> {
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "tail tolerance must lie in (0, 1), got {tail_tol}"
            )));
        }
        if !(mean.is_finite() && mean >= 0.0) {
            return Err(Error::InvalidArgument(format!("invalid Poisson mean {mean}")));
        }
        let mut n = 0u32;
        loop {
            let tail = poisson_tail(mean, n);
            if tail < tail_tol {
                let weights = (0..=n).map(|k| poisson_weight(mean, k)).collect();
                return Ok(Self {
                    mean,
                    weights,
                    tail_mass: tail,
                });
            }
            if n >= cap {
                return Err(Error::Capacity {
                    what: "photon-number truncation",
                    requested: u128::from(n) + 1,
                    cap: u128::from(cap),
                });
            }
            n += 1;
        }
    }

    pub fn n_max(&self) -> u32 {
        self.weights.len() as u32 - 1
    }
}

/// Per-photon-number weights and Gram matrices of a phase-randomized family.
#[derive(Clone, Debug)]
pub struct SubspaceOverlapSeries {
    pub spec: SymmetricFamilySpec,
    pub n_max: u32,
    pub weights: Vec<f64>,
    pub per_n_gram: Vec<GramMatrix>,
    pub tail_mass: f64,
}

pub fn decompose(spec: &SymmetricFamilySpec, tail_tol: f64) -> Result<SubspaceOverlapSeries> {
    let truncation = PoissonTruncation::new(spec.mean_photons()?, tail_tol)?;
    let n_max = truncation.n_max();
    let per_n_gram = (0..=n_max)
        .map(|n| gram_matrix(&subspace_states(spec, n)?.states))
        .collect::<Result<Vec<_>>>()?;
    Ok(SubspaceOverlapSeries {
        spec: *spec,
        n_max,
        weights: truncation.weights,
        per_n_gram,
        tail_mass: truncation.tail_mass,
    })
}

/// Normalized `N`-photon component `|φ_N⟩` of an arbitrary coherent state and
/// its weight `p_N`. The vector is empty-weight safe: when `p_N = 0` the
/// returned vector is all zeros.
pub fn generic_subspace_state(
    alpha: &CoherentStateVector,
    photons: u32,
) -> Result<(f64, Vec<Complex64>)> {
    let basis = enumerate_subspace(alpha.modes(), photons)?;
    let amps = coherent_amplitudes(alpha, &basis)?;
    let weight: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if weight == 0.0 {
        return Ok((0.0, amps));
    }
    let s = weight.sqrt();
    Ok((weight, amps.into_iter().map(|a| a / s).collect()))
}

/// Phase-randomized state of an arbitrary coherent input, truncated at `n_max`.
pub fn phase_randomize(alpha: &CoherentStateVector, n_max: u32) -> Result<BlockDiagonal> {
    if n_max > N_MAX_HARD_CAP {
        return Err(Error::Capacity {
            what: "photon-number truncation",
            requested: u128::from(n_max),
            cap: u128::from(N_MAX_HARD_CAP),
        });
    }
    let blocks = (0..=n_max)
        .map(|n| {
            let dim = subspace_dimension(alpha.modes(), n).unwrap_or(u128::MAX);
            if dim > DENSE_BLOCK_CAP as u128 {
                return Err(Error::Capacity {
                    what: "dense subspace block",
                    requested: dim,
                    cap: DENSE_BLOCK_CAP as u128,
                });
            }
            let basis = enumerate_subspace(alpha.modes(), n)?;
            let amps = coherent_amplitudes(alpha, &basis)?;
            Ok(HermitianMatrix::projector(&amps))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockDiagonal::new(blocks))
}

/// Truncated mixed state of family member `which`, one block per photon number.
pub fn mixed_state_matrix(
    spec: &SymmetricFamilySpec,
    which: usize,
    n_max: u32,
) -> Result<BlockDiagonal> {
    let states = spec.coherent_states()?;
    let alpha = states.get(which).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "state index {which} out of range for {}",
            spec.family
        ))
    })?;
    phase_randomize(alpha, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{hermitian_eig, ln_factorial, FockIndex};
    use crate::symmetric::Family;

    fn spec(f: Family, a: f64) -> SymmetricFamilySpec {
        SymmetricFamilySpec::new(f, a).unwrap()
    }

    #[test]
    fn vacuum_decomposition() {
        let s = decompose(&spec(Family::ThreeMode, 0.0), 1e-12).unwrap();
        assert_eq!(s.n_max, 0);
        assert_eq!(s.weights, vec![1.0]);
        assert_eq!(s.tail_mass, 0.0);
        let g = &s.per_n_gram[0];
        for i in 0..4 {
            for j in 0..4 {
                assert!((g.entries()[(i, j)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn three_mode_weights_are_poisson() {
        let s = decompose(&spec(Family::ThreeMode, 1.0), 1e-12).unwrap();
        for (n, w) in s.weights.iter().enumerate() {
            let expected = (-3.0 + n as f64 * 3f64.ln() - ln_factorial(n as u32)).exp();
            assert!((w - expected).abs() <= 1e-12 * expected, "N={n}");
        }
        let total: f64 = s.weights.iter().sum::<f64>() + s.tail_mass;
        assert!((total - 1.0).abs() < 1e-12);
        assert!(s.tail_mass < 1e-12);
    }

    #[test]
    fn two_mode_tail_is_minimal() {
        let tol = 1e-10;
        let s = decompose(&spec(Family::TwoMode, 0.5), tol).unwrap();
        let mean = 0.5;
        let tail = |n: u32| -> f64 { (n + 1..200).map(|k| poisson_weight(mean, k)).sum() };
        assert!(tail(s.n_max) < tol);
        assert!(tail(s.n_max - 1) >= tol);
    }

    #[test]
    fn hard_cap_is_enforced() {
        let err = PoissonTruncation::new(400.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
        assert!(PoissonTruncation::new(1.0, 0.0).is_err());
        assert!(PoissonTruncation::new(1.0, 1.0).is_err());
    }

    #[test]
    fn per_n_grams_match_closed_forms() {
        let three = decompose(&spec(Family::ThreeMode, 1.5), 1e-12).unwrap();
        for (n, g) in three.per_n_gram.iter().enumerate() {
            let f = 3f64.powi(-(n as i32));
            let gg = if n % 2 == 0 { f } else { -f };
            assert!((g.entries()[(0, 1)].re - f).abs() < 1e-12);
            assert!((g.entries()[(0, 2)].re - gg).abs() < 1e-12);
        }
        let four = decompose(&spec(Family::FourMode, 0.8), 1e-12).unwrap();
        for g in &four.per_n_gram[1..] {
            assert!(g.entries()[(0, 1)].norm() < 1e-12 && g.entries()[(0, 2)].norm() < 1e-12);
        }
        let phase = decompose(&spec(Family::PhaseEncoded, 1.0), 1e-12).unwrap();
        for (n, g) in phase.per_n_gram.iter().enumerate() {
            let polar = Complex64::from_polar(
                2f64.powf(-(n as f64) / 2.0),
                n as f64 * std::f64::consts::FRAC_PI_4,
            );
            assert!((g.entries()[(0, 1)] - polar).norm() < 1e-12, "N={n}");
            if n > 0 {
                assert!(g.entries()[(0, 2)].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn two_mode_matrix_elements() {
        let a = 0.6f64;
        let rho = mixed_state_matrix(&spec(Family::TwoMode, a), 0, 6).unwrap();
        for (n, block) in rho.blocks().iter().enumerate() {
            let basis = enumerate_subspace(2, n as u32).unwrap();
            for (r, x) in basis.iter().enumerate() {
                for (c, y) in basis.iter().enumerate() {
                    let (j, k) = (x.occupations()[0], x.occupations()[1]);
                    let (p, q) = (y.occupations()[0], y.occupations()[1]);
                    let ln = -2.0 * a * a + f64::from(j + k + p + q) * a.ln()
                        - 0.5 * (ln_factorial(j) + ln_factorial(k) + ln_factorial(p) + ln_factorial(q));
                    assert!((block[(r, c)] - Complex64::new(ln.exp(), 0.0)).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn zero_amplitude_gives_vacuum_projector() {
        for family in Family::COHERENT {
            let rho = mixed_state_matrix(&spec(family, 0.0), 0, 4).unwrap();
            let dense = rho.to_dense();
            assert!((dense.trace() - 1.0).abs() < 1e-15);
            assert!((dense[(0, 0)].re - 1.0).abs() < 1e-15);
            assert!((dense.frobenius_norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn trace_matches_truncated_poisson_mass() {
        let sp = spec(Family::ThreeMode, 0.7);
        let rho = mixed_state_matrix(&sp, 0, 12).unwrap();
        let tail = poisson_tail(3.0 * 0.49, 12);
        assert!((rho.trace() - (1.0 - tail)).abs() < 1e-10);
    }

    #[test]
    fn blocks_are_pure() {
        for family in Family::COHERENT {
            let rho = mixed_state_matrix(&spec(family, 0.9), 1, 8).unwrap();
            for block in rho.blocks() {
                let p = block.trace();
                let eig = hermitian_eig(&block.scale(1.0 / p)).unwrap();
                assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-10);
                assert!(eig.eigenvalues[1..].iter().all(|l| l.abs() < 1e-10));
            }
        }
    }

    #[test]
    fn symmetry_maps_each_state_to_the_next() {
        for family in Family::COHERENT {
            let sp = spec(family, 0.7);
            let l = sp.num_states();
            let rhos: Vec<_> = (0..l).map(|k| mixed_state_matrix(&sp, k, 6).unwrap()).collect();
            for n in 0..=6u32 {
                let basis = enumerate_subspace(family.modes().unwrap(), n).unwrap();
                let u = family.symmetry_matrix(&basis).unwrap();
                for k in 0..l {
                    let mapped = rhos[k].blocks()[n as usize].conjugate_by(&u).unwrap();
                    let next = &rhos[(k + 1) % l].blocks()[n as usize];
                    let dev = mapped.sub(next).unwrap().frobenius_norm();
                    assert!(dev < 1e-10, "{family} N={n} K={k}: {dev:e}");
                }
            }
        }
    }

    #[test]
    fn generic_state_handles_asymmetric_inputs() {
        let alpha = CoherentStateVector::new(vec![
            Complex64::new(0.3, 0.1),
            Complex64::new(0.0, 0.0),
            Complex64::new(-0.5, 0.4),
        ])
        .unwrap();
        let mut total = 0.0;
        for n in 0..=25 {
            let (w, v) = generic_subspace_state(&alpha, n).unwrap();
            assert!((w - poisson_weight(alpha.mean_photons(), n)).abs() < 1e-14);
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            total += w;
        }
        assert!((total - 1.0).abs() < 1e-12);
        let idx = FockIndex::new(vec![0, 1, 0]);
        let basis = enumerate_subspace(3, 1).unwrap();
        let (_, v) = generic_subspace_state(&alpha, 1).unwrap();
        assert_eq!(v[basis.index_of(&idx).unwrap()], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn dense_block_cap() {
        let alpha = CoherentStateVector::new(vec![Complex64::new(0.1, 0.0); 6]).unwrap();
        assert!(matches!(phase_randomize(&alpha, 40), Err(Error::Capacity { .. })));
    }
}
