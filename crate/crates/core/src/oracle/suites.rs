//! Invariant suites comparing closed forms, Gram spectra, brute-force
//! measurements and circuit simulations.

use num_complex::Complex64;

use super::report::{CheckResult, Report, Suite};
use super::{
    finite_family_srm, helstrom_two, mixed_p1bit, pure_family_srm, pure_p1bit, srm,
    verify_appendix_b, Bit, CompressedEnsemble,
};
use crate::discrimination::{
    family_p1bit, family_pcorr, four_mode_mixed_pcorr, four_mode_unambiguous,
    mixed_pcorr_from_series, two_mode_mixed_pcorr, Variant,
};
use crate::error::Result;
use crate::fock::{
    coherent_amplitudes, enumerate_subspace, hermitian_eig, ln_factorial, matrix_function,
    poisson_weight, subspace_dimension, support_projector, CMatrix, CoherentStateVector,
    HermitianMatrix, SupportCutoff,
};
use crate::optics::{apply_circuit, click_statistics, min_error_via_circuit, LinearCircuit};
use crate::phase_rand::{decompose, mixed_state_matrix, PoissonTruncation};
use crate::symmetric::{
    circulant_eigenvalues, gram_matrix, multinomial_normalization, srm_success_from_gram,
    subspace_states, Family, SymmetricFamilySpec,
};
use crate::DEFAULT_TAIL_TOL;

const TAIL: f64 = DEFAULT_TAIL_TOL;
const AMPLITUDES: [f64; 3] = [0.3, 0.7, 1.2];
const FOUR_STATE: [Family; 3] = [Family::ThreeMode, Family::FourMode, Family::PhaseEncoded];

/// Runs one suite, or all of them.
pub fn run_suite(suite: Suite) -> Report {
    let parts: Vec<Suite> = match suite {
        Suite::All => Suite::PARTS.to_vec(),
        s => vec![s],
    };
    let mut report = Report::default();
    for part in parts {
        let checks = match part {
            Suite::Fock => fock_checks(),
            Suite::Gram => gram_checks(),
            Suite::Families => family_checks(),
            Suite::AppendixA => appendix_a_checks(),
            Suite::AppendixB => appendix_b_checks(),
            Suite::Circuit => circuit_checks(),
            Suite::All => unreachable!(),
        };
        report.checks.extend(checks);
    }
    report
}

fn spec(family: Family, a: f64) -> Result<SymmetricFamilySpec> {
    SymmetricFamilySpec::new(family, a)
}

/// Largest value of `f` over `items`, or the first error.
fn max_over<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> Result<f64>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in items {
        let e = f(x)?;
        if e.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(e);
    }
    Ok(worst)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A fixed, dense Hermitian test matrix.
fn test_hermitian(d: usize) -> HermitianMatrix {
    let m = CMatrix::from_fn(d, |i, j| {
        let (x, y) = (i as f64, j as f64);
        if i == j {
            c((1.7 * x + 0.3).sin() * 2.0, 0.0)
        } else {
            let (a, b) = if i < j { (x, y) } else { (y, x) };
            let z = c((0.9 * a + 1.3 * b).cos(), (0.4 * a - 0.8 * b).sin());
            if i < j {
                z
            } else {
                z.conj()
            }
        }
    });
    HermitianMatrix::hermitian_part(&m)
}

fn fock_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();

    let dims = max_over((1..=4usize).flat_map(|m| (0..=20u32).map(move |n| (m, n))), |(m, n)| {
        let b = enumerate_subspace(m, n)?;
        let expected = subspace_dimension(m, n).unwrap_or(0) as usize;
        let ordered = b.states().windows(2).all(|w| w[0].occupations() > w[1].occupations());
        let sums = b.iter().all(|i| i.total() == n);
        Ok(if b.dimension() == expected && ordered && sums { 0.0 } else { 1.0 })
    });
    out.push(CheckResult::from_result("fock.subspace_enumeration", dims, 0.0));

    let inputs = [
        vec![c(0.8, 0.0), c(-0.8, 0.0)],
        vec![c(0.5, 0.2), c(0.0, 0.0), c(-0.3, 0.6)],
        vec![c(1.1, 0.0), c(0.0, 1.1), c(-1.1, 0.0), c(0.0, -1.1)],
    ];
    let mass = max_over(inputs.iter(), |amps| {
        let alpha = CoherentStateVector::new(amps.clone())?;
        max_over(0..=20u32, |n| {
            let basis = enumerate_subspace(alpha.modes(), n)?;
            let m: f64 = coherent_amplitudes(&alpha, &basis)?.iter().map(|a| a.norm_sqr()).sum();
            Ok((m - poisson_weight(alpha.mean_photons(), n)).abs())
        })
    });
    out.push(CheckResult::from_result("fock.subspace_mass_is_poisson", mass, 1e-12));

    let h = test_hermitian(8);
    let eig = hermitian_eig(&h);
    let recon = eig
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|e| Ok(e.reconstruct().sub(&h)?.frobenius_norm()));
    out.push(CheckResult::from_result("fock.eigen_reconstruction", recon, 1e-9));
    let ortho = eig.as_ref().map(|e| e.orthonormality_error()).map_err(Clone::clone);
    out.push(CheckResult::from_result("fock.eigen_orthonormality", ortho, 1e-10));
    let trace = eig
        .as_ref()
        .map(|e| (e.eigenvalues.iter().sum::<f64>() - h.trace()).abs())
        .map_err(Clone::clone);
    out.push(CheckResult::from_result("fock.eigen_trace", trace, 1e-10));

    let sqrt_square = (|| {
        let a = test_hermitian(6);
        let psd = HermitianMatrix::hermitian_part(&a.matrix().matmul(a.matrix())?);
        let root = matrix_function(&psd, f64::sqrt, SupportCutoff::default())?;
        let back = HermitianMatrix::hermitian_part(&root.matrix().matmul(root.matrix())?);
        Ok(back.sub(&psd)?.frobenius_norm())
    })();
    out.push(CheckResult::from_result("fock.sqrt_then_square", sqrt_square, 1e-9));

    let pinv = (|| {
        let m = HermitianMatrix::from_diagonal(&[4.0, 0.0]);
        let r = matrix_function(&m, |l| 1.0 / l.sqrt(), SupportCutoff::Absolute(1e-10))?;
        Ok(r.sub(&HermitianMatrix::from_diagonal(&[0.5, 0.0]))?.frobenius_norm())
    })();
    out.push(CheckResult::from_result("fock.pseudo_inverse_sqrt", pinv, 1e-14));

    let support = (|| {
        let s = spec(Family::TwoMode, 0.5)?;
        let rho0 = mixed_state_matrix(&s, 0, 10)?.to_dense();
        let rho1 = mixed_state_matrix(&s, 1, 10)?.to_dense();
        let rho = rho0.add(&rho1)?.scale(0.5);
        let r = matrix_function(&rho, |l| 1.0 / l.sqrt(), SupportCutoff::default())?;
        let p = support_projector(&rho, SupportCutoff::default())?;
        Ok(r.sandwich(&rho)?.sub(&p)?.frobenius_norm())
    })();
    out.push(CheckResult::from_result("fock.inverse_sqrt_on_support", support, 1e-9));
    out
}

fn gram_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let row = |family: Family, n: u32| -> Result<Vec<Complex64>> {
        let g = gram_matrix(&subspace_states(&spec(family, 1.0)?, n)?.states)?;
        Ok(g.entries().row(0).to_vec())
    };

    let three = max_over(0..=30u32, |n| {
        let r = row(Family::ThreeMode, n)?;
        let f = 3f64.powi(-(n as i32));
        let g = if n % 2 == 0 { f } else { -f };
        Ok((r[1] - c(f, 0.0)).norm().max((r[2] - c(g, 0.0)).norm()))
    });
    out.push(CheckResult::from_result("gram.three_mode_overlaps", three, 1e-12));

    let four = max_over(1..=20u32, |n| {
        let g = gram_matrix(&subspace_states(&spec(Family::FourMode, 1.0)?, n)?.states)?;
        let e = g.entries();
        Ok((0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| e[(i, j)].norm())
            .fold(0.0, f64::max))
    });
    out.push(CheckResult::from_result("gram.four_mode_orthogonality", four, 1e-12));

    let phase = max_over(0..=30u32, |n| {
        let r = row(Family::PhaseEncoded, n)?;
        let polar = Complex64::from_polar(2f64.powf(-f64::from(n) / 2.0), f64::from(n) * std::f64::consts::FRAC_PI_4);
        let g_err = if n == 0 { 0.0 } else { r[2].norm() };
        Ok((r[1] - polar).norm().max(g_err))
    });
    out.push(CheckResult::from_result("gram.phase_encoded_overlaps", phase, 1e-12));

    let norm = max_over(0..=30u32, |n| {
        let b = enumerate_subspace(3, n)?;
        let closed = (f64::from(n) * 3f64.ln() - ln_factorial(n)).exp();
        Ok((multinomial_normalization(&b) - closed).abs() / closed)
    });
    out.push(CheckResult::from_result("gram.multinomial_normalization", norm, 1e-12));

    for family in Family::COHERENT {
        let err = max_over(0..=20u32, |n| {
            let g = gram_matrix(&subspace_states(&spec(family, 1.0)?, n)?.states)?;
            let mut dft = circulant_eigenvalues(&g)?;
            let mut jac = hermitian_eig(&g.to_hermitian())?.eigenvalues;
            dft.sort_by(f64::total_cmp);
            jac.sort_by(f64::total_cmp);
            Ok(dft.iter().zip(&jac).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        });
        out.push(CheckResult::from_result(format!("gram.dft_vs_jacobi.{family}"), err, 1e-10));
    }

    let qutrit = (|| {
        let g = gram_matrix(&Family::Qutrit.finite_states()?)?;
        Ok((srm_success_from_gram(&g)? - 0.75).abs())
    })();
    out.push(CheckResult::from_result("gram.qutrit_srm", qutrit, 1e-12));
    out
}

fn family_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for family in Family::COHERENT {
        let series = max_over(AMPLITUDES, |a| {
            let s = spec(family, a)?;
            let closed = family_pcorr(&s, Variant::Mixed, None, TAIL)?.value;
            Ok((closed - mixed_pcorr_from_series(&decompose(&s, TAIL)?)?).abs())
        });
        out.push(CheckResult::from_result(format!("families.{family}.mixed_series_vs_gram"), series, 1e-10));

        let block = max_over(AMPLITUDES, |a| {
            let s = spec(family, a)?;
            let closed = family_pcorr(&s, Variant::Mixed, None, TAIL)?.value;
            let l = s.num_states();
            let oracle = CompressedEnsemble::new(&s, TAIL)?.block_srm(&vec![1.0 / l as f64; l])?;
            Ok((closed - oracle).abs())
        });
        out.push(CheckResult::from_result(format!("families.{family}.mixed_pcorr_vs_block_srm"), block, 1e-8));

        let pure = max_over(AMPLITUDES, |a| {
            let s = spec(family, a)?;
            let closed = family_pcorr(&s, Variant::Pure, None, TAIL)?.value;
            Ok((closed - pure_family_srm(&s, TAIL)?).abs())
        });
        out.push(CheckResult::from_result(format!("families.{family}.pure_pcorr_vs_srm"), pure, 1e-8));
    }
    for family in FOUR_STATE {
        for variant in Variant::ALL {
            let err = max_over(AMPLITUDES, |a| {
                let s = spec(family, a)?;
                let closed = family_p1bit(&s, variant, TAIL)?.value;
                let oracle = match variant {
                    Variant::Mixed => mixed_p1bit(&s, Bit::First, TAIL)?,
                    Variant::Pure => pure_p1bit(&s, Bit::First, TAIL)?,
                };
                Ok((closed - oracle).abs())
            });
            out.push(CheckResult::from_result(
                format!("families.{family}.p1bit_{variant}_vs_helstrom"),
                err,
                1e-8,
            ));
        }
    }
    let qutrit = finite_family_srm(Family::Qutrit).map(|p| (p - 0.75).abs());
    out.push(CheckResult::from_result("families.qutrit.srm", qutrit, 1e-10));
    let ququart = finite_family_srm(Family::Ququart).map(|p| (p - 1.0).abs());
    out.push(CheckResult::from_result("families.ququart.srm", ququart, 1e-10));
    let baseline = max_over(Family::COHERENT, |family| {
        max_over(AMPLITUDES, |a| {
            let s = spec(family, a)?;
            let e = CompressedEnsemble::new(&s, TAIL)?;
            let l = s.num_states();
            let p = e.block_srm(&vec![1.0 / l as f64; l])?;
            Ok((1.0 / l as f64 - p).max(0.0))
        })
    });
    out.push(CheckResult::from_result("families.srm_above_guessing", baseline, 1e-12));
    out
}

fn appendix_a_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for family in Family::COHERENT {
        let err = max_over(AMPLITUDES, |a| {
            let s = spec(family, a)?;
            let e = CompressedEnsemble::new(&s, TAIL)?;
            let l = s.num_states();
            let priors = vec![1.0 / l as f64; l];
            Ok((e.block_srm(&priors)? - e.whole_srm(&priors)?).abs())
        });
        out.push(CheckResult::from_result(format!("appendix_a.block_vs_whole_srm.{family}"), err, 1e-9));
    }

    let dense = (|| {
        let s = spec(Family::ThreeMode, 0.7)?;
        let n_max = 10;
        let states = (0..4)
            .map(|k| {
                let rho = mixed_state_matrix(&s, k, n_max)?.to_dense();
                let t = rho.trace();
                Ok(rho.scale(1.0 / t))
            })
            .collect::<Result<Vec<_>>>()?;
        let e = CompressedEnsemble::truncated(&s, n_max)?;
        let kept: f64 = e.weights.iter().sum();
        let dense = kept * srm(&states, &[0.25; 4])?.1;
        Ok((dense - e.whole_srm(&[0.25; 4])?).abs())
    })();
    out.push(CheckResult::from_result("appendix_a.dense_vs_compressed_srm", dense, 1e-9));

    let weights = max_over(Family::COHERENT, |family| {
        max_over(AMPLITUDES, |a| {
            let s = spec(family, a)?;
            let t = PoissonTruncation::new(s.mean_photons()?, TAIL)?;
            let e = CompressedEnsemble::new(&s, TAIL)?;
            Ok(e.weights
                .iter()
                .zip(&t.weights)
                .map(|(x, y)| (x - y).abs() / y)
                .fold(0.0, f64::max))
        })
    });
    out.push(CheckResult::from_result("appendix_a.poisson_weights", weights, 1e-12));

    let purity = max_over(Family::COHERENT, |family| {
        let rho = mixed_state_matrix(&spec(family, 0.9)?, 0, 8)?;
        max_over(rho.blocks(), |block| {
            let eig = hermitian_eig(&block.scale(1.0 / block.trace()))?;
            let l = &eig.eigenvalues;
            Ok(l[1..].iter().fold((l[0] - 1.0).abs(), |m, x| m.max(x.abs())))
        })
    });
    out.push(CheckResult::from_result("appendix_a.block_purity", purity, 1e-10));

    let symmetry = max_over(Family::COHERENT, |family| {
        let s = spec(family, 0.7)?;
        let l = s.num_states();
        let n_max = 6;
        let rhos = (0..l)
            .map(|k| mixed_state_matrix(&s, k, n_max))
            .collect::<Result<Vec<_>>>()?;
        max_over(0..=n_max, |n| {
            let basis = enumerate_subspace(family.modes().unwrap_or(0), n)?;
            let u = family.symmetry_matrix(&basis)?;
            let mut power = CMatrix::identity(basis.dimension());
            for _ in 0..l {
                power = u.matmul(&power)?;
            }
            let cycle = power.sub(&CMatrix::identity(basis.dimension()))?.frobenius_norm();
            max_over(0..l, |k| {
                let mapped = rhos[k].blocks()[n as usize].conjugate_by(&u)?;
                Ok(mapped.sub(&rhos[(k + 1) % l].blocks()[n as usize])?.frobenius_norm())
            })
            .map(|e| e.max(cycle))
        })
    });
    out.push(CheckResult::from_result("appendix_a.symmetry_operator", symmetry, 1e-10));
    out
}

fn appendix_b_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let grid: Vec<(f64, f64)> = [0.0, 0.2, 0.5, 0.8]
        .into_iter()
        .flat_map(|a| [0.5, 0.3].into_iter().map(move |p| (a, p)))
        .collect();
    let reports = grid
        .iter()
        .map(|&(a, p)| {
            let n_max = PoissonTruncation::new(2.0 * a * a, TAIL)?.n_max().max(1);
            verify_appendix_b(a, p, n_max)
        })
        .collect::<Result<Vec<_>>>();
    let reports = match reports {
        Ok(r) => r,
        Err(e) => {
            out.push(CheckResult::from_result("appendix_b.construction", Err(e), 0.0));
            return out;
        }
    };

    let closed = max_over(&reports, |r| Ok((r.helstrom_success - two_mode_mixed_pcorr(r.alpha_abs, r.p0)?).abs()));
    out.push(CheckResult::from_result("appendix_b.helstrom_vs_closed_form", closed, 1e-8));
    let off = max_over(&reports, |r| Ok(r.off_vacuum_distance));
    out.push(CheckResult::from_result("appendix_b.off_vacuum_povm_distance", off, 1e-9));
    let equal = max_over(reports.iter().filter(|r| r.p0 == 0.5), |r| Ok(r.success_gap().abs()));
    out.push(CheckResult::from_result("appendix_b.equal_prior_success", equal, 1e-9));
    let gap = max_over(&reports, |r| Ok((r.success_gap() - r.vacuum_gap).abs()));
    out.push(CheckResult::from_result("appendix_b.gap_confined_to_vacuum", gap, 1e-9));
    let split = max_over(reports.iter().filter(|r| r.alpha_abs > 0.0), |r| {
        Ok((r.srm_vacuum_split[0] - r.p0).abs().max((r.srm_vacuum_split[1] - (1.0 - r.p0)).abs()))
    });
    out.push(CheckResult::from_result("appendix_b.srm_vacuum_split", split, 1e-9));
    let optimal = max_over(&reports, |r| Ok((r.srm_success - r.helstrom_success).max(0.0)));
    out.push(CheckResult::from_result("appendix_b.helstrom_at_least_srm", optimal, 1e-9));
    let valid = max_over(&reports, |r| {
        let a = r.srm.validate()?;
        let b = r.helstrom.validate()?;
        Ok(a.completeness_error.max(b.completeness_error))
    });
    out.push(CheckResult::from_result("appendix_b.povm_validity", valid, 1e-9));

    // The same Helstrom measurement on the un-split Fock-basis states.
    let original = max_over([(0.2, 0.5), (0.2, 0.3), (0.8, 0.5), (0.8, 0.3)], |(a, p)| {
        let s = spec(Family::TwoMode, a)?;
        let n_max = PoissonTruncation::new(2.0 * a * a, TAIL)?.n_max();
        let states = (0..2)
            .map(|k| {
                let rho = mixed_state_matrix(&s, k, n_max)?.to_dense();
                let t = rho.trace();
                Ok(rho.scale(1.0 / t))
            })
            .collect::<Result<Vec<_>>>()?;
        let (_, hel) = helstrom_two(&states[0], &states[1], p)?;
        Ok((hel - two_mode_mixed_pcorr(a, p)?).abs())
    });
    out.push(CheckResult::from_result("appendix_b.helstrom_fock_basis", original, 1e-8));
    out
}

fn circuit_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let fig3 = LinearCircuit::fig3();
    let bs2 = LinearCircuit::bs2();
    let grid: Vec<f64> = (0..=30).map(|i| 0.1 * f64::from(i)).collect();

    let exclusivity = max_over(Family::FourMode.coherent_states(1.0).unwrap_or_default(), |s| {
        let stats = click_statistics(&fig3, &s)?;
        let mut norms: Vec<f64> = stats.clicks.iter().map(|d| d.amplitude.norm()).collect();
        norms.sort_by(f64::total_cmp);
        Ok(norms[..norms.len() - 1].iter().fold(0.0, |m: f64, x| m.max(*x)))
    });
    out.push(CheckResult::from_result("circuit.fig3.exclusivity", exclusivity, 1e-12));

    let expected = [("D1", "11"), ("D2", "10"), ("D3", "00"), ("D4", "01")];
    let identification = max_over(Family::FourMode.labels().iter().enumerate(), |(k, label)| {
        let states = Family::FourMode.coherent_states(1.0)?;
        let stats = click_statistics(&fig3, &states[k])?;
        let lit: Vec<&str> = stats.lit().map(|d| d.name.as_str()).collect();
        let want = expected.iter().find(|(_, l)| l == label).map(|(d, _)| *d);
        Ok(if lit.len() == 1 && Some(lit[0]) == want && stats.identified() == Some(label) { 0.0 } else { 1.0 })
    });
    out.push(CheckResult::from_result("circuit.fig3.identification_map", identification, 0.0));

    let unambiguous = max_over(grid.iter().copied(), |a| {
        let states = Family::FourMode.coherent_states(a)?;
        let stats = click_statistics(&fig3, &states[0])?;
        let total: f64 = stats.clicks.iter().map(|d| d.probability).sum();
        Ok((total - four_mode_unambiguous(a)?).abs())
    });
    out.push(CheckResult::from_result("circuit.fig3.unambiguous_vs_closed_form", unambiguous, 1e-12));

    let min_error = max_over(grid.iter().copied(), |a| {
        let p = min_error_via_circuit(&fig3, &spec(Family::FourMode, a)?, None)?;
        Ok((p - four_mode_mixed_pcorr(a)?).abs())
    });
    out.push(CheckResult::from_result("circuit.fig3.min_error_vs_closed_form", min_error, 1e-12));

    let ports = max_over(grid.iter().copied(), |a| {
        let states = Family::TwoMode.coherent_states(a)?;
        let sum = apply_circuit(&bs2, &states[0])?;
        let diff = apply_circuit(&bs2, &states[1])?;
        let r2a = c(2f64.sqrt() * a, 0.0);
        Ok([
            (sum.amplitudes()[0] - r2a).norm(),
            sum.amplitudes()[1].norm(),
            diff.amplitudes()[0].norm(),
            (diff.amplitudes()[1] - r2a).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max))
    });
    out.push(CheckResult::from_result("circuit.bs2.output_ports", ports, 1e-12));

    let bs2_error = max_over(grid.iter().copied(), |a| {
        let s = spec(Family::TwoMode, a)?;
        max_over([0.5, 0.25], |p| {
            let got = min_error_via_circuit(&bs2, &s, Some(&[p, 1.0 - p]))?;
            Ok((got - two_mode_mixed_pcorr(a, p)?).abs())
        })
    });
    out.push(CheckResult::from_result("circuit.bs2.min_error_vs_closed_form", bs2_error, 1e-12));

    let energy = max_over(Family::COHERENT, |family| {
        let circuit = if family.modes() == Some(4) { &fig3 } else { &bs2 };
        if family.modes() == Some(3) {
            return Ok(0.0);
        }
        max_over(family.coherent_states(1.3)?, |s| {
            let out = apply_circuit(circuit, &s)?;
            Ok((out.mean_photons() - s.mean_photons()).abs())
        })
    });
    out.push(CheckResult::from_result("circuit.energy_conservation", energy, 1e-12));

    let ququart = (|| {
        let outs = Family::Ququart
            .finite_states()?
            .iter()
            .map(|s| fig3.apply_amplitudes(s))
            .collect::<Result<Vec<_>>>()?;
        let mut worst: f64 = 0.0;
        for (i, a) in outs.iter().enumerate() {
            for (j, b) in outs.iter().enumerate() {
                let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - c(want, 0.0)).norm());
            }
        }
        Ok(worst)
    })();
    out.push(CheckResult::from_result("circuit.ququart_single_photon_orthonormal", ququart, 1e-10));
    out
}
