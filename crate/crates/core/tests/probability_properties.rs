use proptest::prelude::*;
use qsd_core::discrimination::{evaluate, family_pcorr, Metric, Variant};
use qsd_core::fock::HermitianMatrix;
use qsd_core::optics::{apply_circuit, click_statistics, Element, LinearCircuit};
use qsd_core::oracle::{helstrom_two, srm};
use qsd_core::phase_rand::CoherentStateVector;
use qsd_core::symmetric::{Family, SymmetricFamilySpec};
use qsd_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TAIL: f64 = 1e-14;
const EPS: f64 = 1e-12;

fn grid(n: usize, max: f64) -> impl Iterator<Item = f64> {
    (0..=n).map(move |i| max * i as f64 / n as f64)
}

fn value(family: Family, variant: Variant, metric: Metric, a: f64) -> f64 {
    evaluate(family, variant, metric, a, None, TAIL).unwrap().value
}

#[test]
fn curves_are_monotone_in_amplitude() {
    for family in Family::COHERENT {
        for variant in [Variant::Pure, Variant::Mixed] {
            for metric in [Metric::PCorr, Metric::P1Bit] {
                let values: Vec<f64> = grid(200, 3.0).map(|a| value(family, variant, metric, a)).collect();
                for (i, w) in values.windows(2).enumerate() {
                    assert!(w[1] >= w[0] - EPS, "{family} {variant} {metric} step {i}: {} -> {}", w[0], w[1]);
                }
            }
        }
    }
}

#[test]
fn probabilities_stay_in_their_ranges() {
    for family in Family::COHERENT {
        let l = family.num_states() as f64;
        for a in grid(150, 3.0) {
            for variant in [Variant::Pure, Variant::Mixed] {
                let p = value(family, variant, Metric::PCorr, a);
                assert!(p >= 1.0 / l - EPS && p <= 1.0 + EPS, "{family} {variant} {a}: {p}");
                let b = value(family, variant, Metric::P1Bit, a);
                assert!((0.5 - EPS..=1.0 + EPS).contains(&b), "{family} {variant} {a}: {b}");
                assert!(b >= p - EPS, "one bit is never harder than the full label");
            }
            let pure = value(family, Variant::Pure, Metric::PCorr, a);
            let mixed = value(family, Variant::Mixed, Metric::PCorr, a);
            assert!(pure >= mixed - EPS, "{family} {a}: pure {pure} < mixed {mixed}");
        }
    }
}

#[test]
fn unambiguous_never_beats_minimum_error() {
    for family in [Family::TwoMode, Family::FourMode] {
        for a in grid(100, 3.0) {
            let u = value(family, Variant::Mixed, Metric::PUnambiguous, a);
            let l = family.num_states() as f64;
            let p = value(family, Variant::Mixed, Metric::PCorr, a);
            // A conclusive result is correct; otherwise guess among the rest.
            assert!(u + (1.0 - u) / l <= p + EPS, "{family} {a}: {u} vs {p}");
        }
    }
}

fn random_density(rng: &mut impl Rng, d: usize) -> HermitianMatrix {
    let rank = rng.gen_range(1..=d);
    let mut m = HermitianMatrix::zeros(d);
    for _ in 0..rank {
        let v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        m = m.add(&HermitianMatrix::projector(&v)).unwrap();
    }
    let t = m.trace();
    m.scale(1.0 / t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_mode_prior_symmetry(a in 0.0f64..3.0, p in 0.01f64..0.99) {
        let spec = SymmetricFamilySpec::new(Family::TwoMode, a).unwrap();
        for variant in [Variant::Pure, Variant::Mixed] {
            let lo = family_pcorr(&spec, variant, Some(p), TAIL).unwrap().value;
            let hi = family_pcorr(&spec, variant, Some(1.0 - p), TAIL).unwrap().value;
            prop_assert!((lo - hi).abs() < 1e-12);
            prop_assert!(lo >= p.max(1.0 - p) - EPS);
        }
    }

    #[test]
    fn helstrom_dominates_srm(seed in any::<u64>(), d in 2usize..=6, p0 in 0.05f64..0.95) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho0 = random_density(&mut rng, d);
        let rho1 = random_density(&mut rng, d);
        let states = [rho0.clone(), rho1.clone()];
        let (hel, ph) = helstrom_two(&rho0, &rho1, p0).unwrap();
        let (sq, ps) = srm(&states, &[p0, 1.0 - p0]).unwrap();
        hel.validate().unwrap();
        sq.validate().unwrap();
        prop_assert!(ph >= ps - 1e-10, "helstrom {} < srm {}", ph, ps);
        prop_assert!(ph >= p0.max(1.0 - p0) - 1e-10 && ph <= 1.0 + 1e-10);
        prop_assert!((sq.success(&states, &[p0, 1.0 - p0]).unwrap() - ps).abs() < 1e-10);
    }

    #[test]
    fn srm_is_a_valid_measurement(seed in any::<u64>(), d in 2usize..=6, l in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let states: Vec<HermitianMatrix> =
            (0..l).map(|_| random_density(&mut rng, d)).collect();
        let raw: Vec<f64> = (0..l).map(|_| rng.gen_range(0.1..1.0)).collect();
        let sum: f64 = raw.iter().sum();
        let priors: Vec<f64> = raw.iter().map(|p| p / sum).collect();
        let (povm, p) = srm(&states, &priors).unwrap();
        povm.validate().unwrap();
        prop_assert!((0.0..=1.0 + 1e-10).contains(&p));
        prop_assert!((povm.success(&states, &priors).unwrap() - p).abs() < 1e-10);
    }

    #[test]
    fn passive_circuits_conserve_energy(
        seed in any::<u64>(),
        modes in 2usize..=5,
        depth in 0usize..=12,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut elements = Vec::new();
        for _ in 0..depth {
            if rng.gen_bool(0.5) {
                let i = rng.gen_range(0..modes);
                let j = (i + rng.gen_range(1..modes)) % modes;
                elements.push(Element::BeamSplitter(i, j));
            } else {
                elements.push(Element::PhaseShift(rng.gen_range(0..modes), rng.gen_range(0.0..6.3)));
            }
        }
        let c = LinearCircuit::new(modes, elements, Vec::new()).unwrap();
        let input = CoherentStateVector::new(
            (0..modes).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect(),
        ).unwrap();
        let out = apply_circuit(&c, &input).unwrap();
        prop_assert!((out.mean_photons() - input.mean_photons()).abs() < 1e-12 * (1.0 + input.mean_photons()));
    }

    #[test]
    fn click_statistics_ignore_global_phase(a in 0.0f64..2.5, theta in 0.0f64..6.3, k in 0usize..4) {
        let c = LinearCircuit::fig3();
        let state = &Family::FourMode.coherent_states(a).unwrap()[k];
        let rotated = CoherentStateVector::new(
            state.amplitudes().iter().map(|z| z * Complex64::from_polar(1.0, theta)).collect(),
        ).unwrap();
        let s0 = click_statistics(&c, state).unwrap();
        let s1 = click_statistics(&c, &rotated).unwrap();
        prop_assert!((s0.no_click - s1.no_click).abs() < 1e-12);
        for (x, y) in s0.clicks.iter().zip(&s1.clicks) {
            prop_assert!((x.probability - y.probability).abs() < 1e-12);
        }
    }
}
