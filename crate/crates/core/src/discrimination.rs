//! Closed-form discrimination probabilities for pure and phase-randomized
//! families: minimum error, unambiguous, one-bit Helstrom and cheating.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase_rand::{PoissonTruncation, SubspaceOverlapSeries};
use crate::symmetric::{
    check_amplitude, gram_matrix, srm_success_from_gram, Family, SymmetricFamilySpec,
};

/// Radicands down to this value are clipped to zero.
pub const RADICAND_TOLERANCE: f64 = 1e-12;
/// Grid step of the `ΔP_corr` maximum scan.
pub const DELTA_SCAN_STEP: f64 = 0.005;
/// Upper end of the `ΔP_corr` maximum scan.
pub const DELTA_SCAN_MAX: f64 = 3.0;

/// A value obtained by summing a photon-number series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Number of summed photon-number terms, 0 for closed forms.
    pub terms: usize,
}

impl SeriesValue {
    fn closed(value: f64) -> Self {
        Self { value, terms: 0 }
    }
}

fn clipped_sqrt(x: f64) -> Result<f64> {
    if x < -RADICAND_TOLERANCE {
        return Err(Error::InvalidOverlap { radicand: x });
    }
    Ok(x.max(0.0).sqrt())
}

/// `p_≤ = min(p, 1 - p)` for a prior in `(0, 1)`.
pub fn normalize_prior(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!("prior must lie in (0, 1), got {p}")));
    }
    Ok(p.min(1.0 - p))
}

fn sum_poisson_series(
    mean: f64,
    tail_tol: f64,
    term: impl Fn(u32) -> Result<f64>,
) -> Result<SeriesValue> {
    let t = PoissonTruncation::new(mean, tail_tol)?;
    let mut value = 0.0;
    for (n, w) in t.weights.iter().enumerate() {
        value += w * term(n as u32)?;
    }
    Ok(SeriesValue {
        value,
        terms: t.weights.len(),
    })
}

/// Helstrom success for the phase-randomized two-mode pair: `1 - p_≤ e^{-2|α|²}`.
pub fn two_mode_mixed_pcorr(alpha_abs: f64, p_min: f64) -> Result<f64> {
    check_amplitude(alpha_abs)?;
    let p = normalize_prior(p_min)?;
    Ok(1.0 - p * (-2.0 * alpha_abs * alpha_abs).exp())
}

/// Helstrom success for the pure pair `|α,±α⟩`.
pub fn two_mode_pure_pcorr(alpha_abs: f64, p_min: f64) -> Result<f64> {
    check_amplitude(alpha_abs)?;
    let p = normalize_prior(p_min)?;
    let overlap2 = (-4.0 * alpha_abs * alpha_abs).exp();
    Ok(0.5 + 0.5 * clipped_sqrt(1.0 - 4.0 * p * (1.0 - p) * overlap2)?)
}

/// Conclusive-outcome probability of the beam-splitter measurement on the pair.
pub fn two_mode_unambiguous(alpha_abs: f64) -> Result<f64> {
    check_amplitude(alpha_abs)?;
    Ok(1.0 - (-2.0 * alpha_abs * alpha_abs).exp())
}

/// `(1/16)[3√(1 - (-3)^{-N}) + √(1 - (-3)^{-N+1})]²`, the SRM success in the
/// `N`-photon subspace of the three-mode family.
pub fn three_mode_subspace_pcorr(n: u32) -> Result<f64> {
    let g = if n.is_multiple_of(2) { 1.0 } else { -1.0 } * 3f64.powi(-(n as i32));
    let s = 3.0 * clipped_sqrt(1.0 - g)? + clipped_sqrt(1.0 + 3.0 * g)?;
    Ok(s * s / 16.0)
}

pub fn three_mode_mixed_pcorr(alpha_abs: f64, tail_tol: f64) -> Result<SeriesValue> {
    check_amplitude(alpha_abs)?;
    sum_poisson_series(3.0 * alpha_abs * alpha_abs, tail_tol, three_mode_subspace_pcorr)
}

/// `¼(1 + √(1 - e^{-4|α|²}))²`.
pub fn three_mode_pure_pcorr(alpha_abs: f64) -> Result<f64> {
    check_amplitude(alpha_abs)?;
    let s = 1.0 + clipped_sqrt(1.0 - (-4.0 * alpha_abs * alpha_abs).exp())?;
    Ok(0.25 * s * s)
}

/// `1 - ¾ e^{-4|α|²}`.
pub fn four_mode_mixed_pcorr(alpha_abs: f64) -> Result<f64> {
    check_amplitude(alpha_abs)?;
    Ok(1.0 - 0.75 * (-4.0 * alpha_abs * alpha_abs).exp())
}

/// `1 - e^{-4|α|²}`.
pub fn four_mode_unambiguous(alpha_abs: f64) -> Result<f64> {
    check_amplitude(alpha_abs)?;
    Ok(1.0 - (-4.0 * alpha_abs * alpha_abs).exp())
}

/// `(1/16)(√(1 + 3e) + 3√(1 - e))²` with `e = e^{-4|α|²}`.
pub fn four_mode_pure_pcorr(alpha_abs: f64) -> Result<f64> {
    check_amplitude(alpha_abs)?;
    let e = (-4.0 * alpha_abs * alpha_abs).exp();
    let s = clipped_sqrt(1.0 + 3.0 * e)? + 3.0 * clipped_sqrt(1.0 - e)?;
    Ok(s * s / 16.0)
}

/// `cos²(Nπ/4)`, exact, from `N` mod 4.
fn cos2_quarter_turns(n: u32) -> f64 {
    match n % 4 {
        0 => 1.0,
        2 => 0.0,
        _ => 0.5,
    }
}

/// SRM success in the `N`-photon subspace of the phase-encoded family.
pub fn phase_encoded_subspace_pcorr(n: u32) -> Result<f64> {
    if n == 0 {
        return Ok(0.25);
    }
    let scale = 2f64.powi(2 - n as i32);
    let c2 = cos2_quarter_turns(n);
    let s2 = 1.0 - c2;
    let a = clipped_sqrt(1.0 + clipped_sqrt(1.0 - scale * c2)?)?;
    let b = clipped_sqrt(1.0 + clipped_sqrt(1.0 - scale * s2)?)?;
    Ok((a + b) * (a + b) / 8.0)
}

pub fn phase_encoded_mixed_pcorr(alpha_abs: f64, tail_tol: f64) -> Result<SeriesValue> {
    check_amplitude(alpha_abs)?;
    sum_poisson_series(2.0 * alpha_abs * alpha_abs, tail_tol, phase_encoded_subspace_pcorr)
}

/// `(e^{-x}/4)(√(cosh x + √(cosh²x - cos²x)) + √(sinh x + √(sinh²x - sin²x)))²`,
/// `x = |α|²`, evaluated with the `e^{-x}` folded into each radical.
pub fn phase_encoded_pure_pcorr(alpha_abs: f64) -> Result<f64> {
    check_amplitude(alpha_abs)?;
    let x = alpha_abs * alpha_abs;
    let e2 = (-2.0 * x).exp();
    let c = 0.5 * (1.0 + e2);
    let s = 0.5 * (1.0 - e2);
    let (sin, cos) = x.sin_cos();
    let a = clipped_sqrt(c + clipped_sqrt(c * c - e2 * cos * cos)?)?;
    let b = clipped_sqrt(s + clipped_sqrt(s * s - e2 * sin * sin)?)?;
    Ok(0.25 * (a + b) * (a + b))
}

/// Helstrom success for reading one bit of a four-state symmetric family with
/// Gram row `(1, F, G, F*)`.
pub fn p1bit_from_overlaps(f: Complex64, g: f64) -> Result<f64> {
    if f.norm() > 1.0 + RADICAND_TOLERANCE || g.abs() > 1.0 + RADICAND_TOLERANCE {
        return Err(Error::InvalidArgument(format!(
            "overlaps must satisfy |F| ≤ 1 and |G| ≤ 1, got F = {f}, G = {g}"
        )));
    }
    let (re, im) = (f.re, f.im);
    let r = (1.0 + g).powi(2) * im * im + (1.0 - g).powi(2) * re * re - 4.0 * re * re * im * im;
    let root_r = clipped_sqrt(r)?;
    let plus = clipped_sqrt(1.0 - g * g + 2.0 * root_r)?;
    let minus = clipped_sqrt(1.0 - g * g - 2.0 * root_r)?;
    Ok(0.5 * (1.0 + 0.5 * plus + 0.5 * minus))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Pure,
    Mixed,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Pure, Variant::Mixed];

    pub fn tag(self) -> &'static str {
        match self {
            Variant::Pure => "pure",
            Variant::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure" => Ok(Variant::Pure),
            "mixed" => Ok(Variant::Mixed),
            _ => Err(Error::InvalidArgument(format!("unknown variant `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    PCorr,
    P1Bit,
    BOt,
    PUnambiguous,
    DeltaPCorr,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::PCorr,
        Metric::P1Bit,
        Metric::BOt,
        Metric::PUnambiguous,
        Metric::DeltaPCorr,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Metric::PCorr => "p_corr",
            Metric::P1Bit => "p_1bit",
            Metric::BOt => "b_ot",
            Metric::PUnambiguous => "p_unambiguous",
            Metric::DeltaPCorr => "delta_p_corr",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown metric `{s}`")))
    }
}

fn unsupported(family: Family, what: impl Into<String>) -> Error {
    Error::Unsupported {
        family: family.tag().into(),
        what: what.into(),
    }
}

fn finite_family_gram_row(family: Family) -> Result<(Complex64, f64)> {
    let g = gram_matrix(&family.finite_states()?)?;
    let row = g
        .generator_row()
        .ok_or_else(|| Error::InconsistentGram("finite family is not circulant".into()))?;
    Ok((row[1], row[2].re))
}

/// Minimum-error success probability. `prior` applies to the two-state family
/// only and defaults to equal priors.
pub fn family_pcorr(
    spec: &SymmetricFamilySpec,
    variant: Variant,
    prior: Option<f64>,
    tail_tol: f64,
) -> Result<SeriesValue> {
    let family = spec.family;
    if prior.is_some() && family != Family::TwoMode {
        return Err(Error::InvalidArgument(format!(
            "a prior applies to two_mode only, not {family}"
        )));
    }
    let a = spec.amplitude;
    match (family, variant) {
        (Family::TwoMode, Variant::Mixed) => {
            two_mode_mixed_pcorr(a, prior.unwrap_or(0.5)).map(SeriesValue::closed)
        }
        (Family::TwoMode, Variant::Pure) => {
            two_mode_pure_pcorr(a, prior.unwrap_or(0.5)).map(SeriesValue::closed)
        }
        (Family::ThreeMode, Variant::Mixed) => three_mode_mixed_pcorr(a, tail_tol),
        (Family::ThreeMode, Variant::Pure) => three_mode_pure_pcorr(a).map(SeriesValue::closed),
        (Family::FourMode, Variant::Mixed) => four_mode_mixed_pcorr(a).map(SeriesValue::closed),
        (Family::FourMode, Variant::Pure) => four_mode_pure_pcorr(a).map(SeriesValue::closed),
        (Family::PhaseEncoded, Variant::Mixed) => phase_encoded_mixed_pcorr(a, tail_tol),
        (Family::PhaseEncoded, Variant::Pure) => {
            phase_encoded_pure_pcorr(a).map(SeriesValue::closed)
        }
        (Family::Qutrit | Family::Ququart, Variant::Pure) => {
            srm_success_from_gram(&gram_matrix(&family.finite_states()?)?).map(SeriesValue::closed)
        }
        (Family::Qutrit | Family::Ququart, Variant::Mixed) => {
            Err(unsupported(family, "phase randomization"))
        }
    }
}

/// Probability of learning one chosen bit of a four-state family, or the
/// equal-prior Helstrom success for the two-state family.
pub fn family_p1bit(
    spec: &SymmetricFamilySpec,
    variant: Variant,
    tail_tol: f64,
) -> Result<SeriesValue> {
    let a = spec.amplitude;
    let x = a * a;
    match (spec.family, variant) {
        (Family::TwoMode, _) => family_pcorr(spec, variant, None, tail_tol),
        (Family::ThreeMode, Variant::Pure) => {
            let f = (-2.0 * x).exp();
            p1bit_from_overlaps(Complex64::new(f, 0.0), f * f).map(SeriesValue::closed)
        }
        (Family::FourMode, Variant::Pure) => {
            let f = (-4.0 * x).exp();
            p1bit_from_overlaps(Complex64::new(f, 0.0), f).map(SeriesValue::closed)
        }
        (Family::PhaseEncoded, Variant::Pure) => {
            let f = Complex64::from_polar((-x).exp(), x);
            p1bit_from_overlaps(f, (-2.0 * x).exp()).map(SeriesValue::closed)
        }
        (Family::ThreeMode, Variant::Mixed) => sum_poisson_series(3.0 * x, tail_tol, |n| {
            if n == 0 {
                return Ok(0.5);
            }
            let f = 3f64.powi(-(n as i32));
            let g = if n % 2 == 0 { f } else { -f };
            p1bit_from_overlaps(Complex64::new(f, 0.0), g)
        }),
        (Family::FourMode, Variant::Mixed) => sum_poisson_series(4.0 * x, tail_tol, |n| {
            if n == 0 {
                Ok(0.5)
            } else {
                p1bit_from_overlaps(Complex64::new(0.0, 0.0), 0.0)
            }
        }),
        (Family::PhaseEncoded, Variant::Mixed) => sum_poisson_series(2.0 * x, tail_tol, |n| {
            if n == 0 {
                return Ok(0.5);
            }
            p1bit_from_overlaps(Complex64::new(0.5, 0.5).powu(n), 0.0)
        }),
        (Family::Qutrit | Family::Ququart, Variant::Pure) => {
            let (f, g) = finite_family_gram_row(spec.family)?;
            p1bit_from_overlaps(f, g).map(SeriesValue::closed)
        }
        (Family::Qutrit | Family::Ququart, Variant::Mixed) => {
            Err(unsupported(spec.family, "phase randomization"))
        }
    }
}

/// Receiver cheating probability: full discrimination of all four states.
/// The mixed phase-encoded value is the same series as its minimum-error
/// probability.
pub fn family_bot(
    spec: &SymmetricFamilySpec,
    variant: Variant,
    tail_tol: f64,
) -> Result<SeriesValue> {
    if spec.family == Family::TwoMode {
        return Err(unsupported(spec.family, "a cheating probability (only one bit is encoded)"));
    }
    family_pcorr(spec, variant, None, tail_tol)
}

/// Conclusive-outcome probability of the linear-optics unambiguous measurement.
/// Phase randomization leaves it unchanged, so both variants agree.
pub fn family_unambiguous(spec: &SymmetricFamilySpec) -> Result<f64> {
    match spec.family {
        Family::TwoMode => two_mode_unambiguous(spec.amplitude),
        Family::FourMode => four_mode_unambiguous(spec.amplitude),
        other => Err(unsupported(other, "an unambiguous measurement")),
    }
}

/// `P_corr^pure - P_corr^mixed`.
pub fn delta_pcorr(spec: &SymmetricFamilySpec, tail_tol: f64) -> Result<f64> {
    let pure = family_pcorr(spec, Variant::Pure, None, tail_tol)?.value;
    let mixed = family_pcorr(spec, Variant::Mixed, None, tail_tol)?.value;
    Ok(pure - mixed)
}

/// Largest `ΔP_corr` on the grid `0, 0.005, ..., 3`, as `(|α|, ΔP_corr)`.
pub fn max_delta_pcorr(family: Family, tail_tol: f64) -> Result<(f64, f64)> {
    let steps = (DELTA_SCAN_MAX / DELTA_SCAN_STEP).round() as usize;
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 0..=steps {
        let a = i as f64 * DELTA_SCAN_STEP;
        let d = delta_pcorr(&SymmetricFamilySpec::new(family, a)?, tail_tol)?;
        if d > best.1 {
            best = (a, d);
        }
    }
    Ok(best)
}

/// `Σ_N p_N · SRM(Gram_N)` from per-subspace Gram matrices, independent of the
/// closed-form brackets.
pub fn mixed_pcorr_from_series(series: &SubspaceOverlapSeries) -> Result<f64> {
    series
        .weights
        .iter()
        .zip(&series.per_n_gram)
        .map(|(w, g)| Ok(w * srm_success_from_gram(g)?))
        .sum()
}

/// One evaluated curve point.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityPoint {
    pub family: Family,
    pub variant: Variant,
    pub metric: Metric,
    pub alpha_abs: f64,
    pub prior: Option<f64>,
    pub value: f64,
    pub series_terms: usize,
}

/// Evaluates `metric` for one family, variant and amplitude.
pub fn evaluate(
    family: Family,
    variant: Variant,
    metric: Metric,
    alpha_abs: f64,
    prior: Option<f64>,
    tail_tol: f64,
) -> Result<ProbabilityPoint> {
    let spec = SymmetricFamilySpec::new(family, alpha_abs)?;
    if prior.is_some() && metric != Metric::PCorr {
        return Err(Error::InvalidArgument(format!(
            "a prior applies to p_corr only, not {metric}"
        )));
    }
    let sv = match metric {
        Metric::PCorr => family_pcorr(&spec, variant, prior, tail_tol)?,
        Metric::P1Bit => family_p1bit(&spec, variant, tail_tol)?,
        Metric::BOt => family_bot(&spec, variant, tail_tol)?,
        Metric::PUnambiguous => SeriesValue::closed(family_unambiguous(&spec)?),
        Metric::DeltaPCorr => {
            if !family.is_coherent() {
                return Err(unsupported(family, "a pure/mixed difference"));
            }
            let mixed = family_pcorr(&spec, Variant::Mixed, None, tail_tol)?;
            let pure = family_pcorr(&spec, Variant::Pure, None, tail_tol)?;
            SeriesValue {
                value: pure.value - mixed.value,
                terms: mixed.terms,
            }
        }
    };
    Ok(ProbabilityPoint {
        family,
        variant,
        metric,
        alpha_abs,
        prior,
        value: sv.value,
        series_terms: sv.terms,
    })
}

/// A contiguous `P_1bit` interval where the mixed phase-encoded cheating
/// probability lies below the pure one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossoverRegion {
    pub p1bit_low: f64,
    pub p1bit_high: f64,
    /// Most negative `B_mixed - B_pure` inside the region.
    pub min_difference: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossoverReport {
    pub regions: Vec<CrossoverRegion>,
    pub grid_points: usize,
}

const CROSSOVER_THRESHOLD: f64 = -1e-12;

struct PhaseEncodedCurves {
    tail_tol: f64,
}

impl PhaseEncodedCurves {
    fn spec(a: f64) -> Result<SymmetricFamilySpec> {
        SymmetricFamilySpec::new(Family::PhaseEncoded, a)
    }

    fn pure_p1bit(&self, a: f64) -> Result<f64> {
        Ok(family_p1bit(&Self::spec(a)?, Variant::Pure, self.tail_tol)?.value)
    }

    /// `|α|` on the pure curve with the given `P_1bit`, by bisection.
    fn pure_alpha_for(&self, p1bit: f64) -> Result<f64> {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while self.pure_p1bit(hi)? < p1bit {
            hi *= 2.0;
            if hi > 64.0 {
                return Err(Error::NotConverged {
                    sweeps: 0,
                    residual: 1.0 - p1bit,
                });
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.pure_p1bit(mid)? < p1bit {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// `(P_1bit, B_mixed - B_pure)` at mixed amplitude `a`.
    fn difference(&self, a: f64) -> Result<(f64, f64)> {
        let spec = Self::spec(a)?;
        let p = family_p1bit(&spec, Variant::Mixed, self.tail_tol)?.value;
        let b_mixed = family_bot(&spec, Variant::Mixed, self.tail_tol)?.value;
        let a_pure = self.pure_alpha_for(p)?;
        let b_pure = family_bot(&Self::spec(a_pure)?, Variant::Pure, self.tail_tol)?.value;
        Ok((p, b_mixed - b_pure))
    }

    /// Refines a sign change of the difference between `a` and `b`.
    fn boundary(&self, mut a: f64, mut b: f64) -> Result<f64> {
        let inside_a = self.difference(a)?.1 < CROSSOVER_THRESHOLD;
        for _ in 0..50 {
            let mid = 0.5 * (a + b);
            if (self.difference(mid)?.1 < CROSSOVER_THRESHOLD) == inside_a {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(self.difference(0.5 * (a + b))?.0)
    }
}

/// Compares the mixed and pure phase-encoded cheating probabilities at equal
/// `P_1bit`, scanning the mixed curve over `|α| ∈ (0, alpha_max]`.
pub fn phase_encoded_crossover(
    alpha_max: f64,
    steps: usize,
    tail_tol: f64,
) -> Result<CrossoverReport> {
    if steps < 2 || !(alpha_max > 0.0) {
        return Err(Error::InvalidArgument("crossover scan needs a non-degenerate grid".into()));
    }
    let curves = PhaseEncodedCurves { tail_tol };
    let grid: Vec<f64> = (1..=steps).map(|i| alpha_max * i as f64 / steps as f64).collect();
    let diffs = grid
        .iter()
        .map(|&a| curves.difference(a))
        .collect::<Result<Vec<_>>>()?;
    let mut regions = Vec::new();
    let mut i = 0;
    while i < grid.len() {
        if diffs[i].1 >= CROSSOVER_THRESHOLD {
            i += 1;
            continue;
        }
        let start = i;
        while i < grid.len() && diffs[i].1 < CROSSOVER_THRESHOLD {
            i += 1;
        }
        let end = i - 1;
        let low = if start == 0 {
            diffs[0].0
        } else {
            curves.boundary(grid[start], grid[start - 1])?
        };
        let high = if i == grid.len() {
            diffs[end].0
        } else {
            curves.boundary(grid[end], grid[end + 1])?
        };
        let min_difference = diffs[start..=end]
            .iter()
            .map(|d| d.1)
            .fold(f64::INFINITY, f64::min);
        regions.push(CrossoverRegion {
            p1bit_low: low,
            p1bit_high: high,
            min_difference,
        });
    }
    Ok(CrossoverReport {
        regions,
        grid_points: grid.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_rand::decompose;

    const TAIL: f64 = 1e-12;

    fn spec(f: Family, a: f64) -> SymmetricFamilySpec {
        SymmetricFamilySpec::new(f, a).unwrap()
    }

    #[test]
    fn two_mode_values() {
        assert_eq!(two_mode_mixed_pcorr(0.0, 0.5).unwrap(), 0.5);
        assert!((two_mode_mixed_pcorr(1.0, 0.5).unwrap() - 0.932332).abs() < 1e-6);
        assert_eq!(two_mode_pure_pcorr(0.0, 0.5).unwrap(), 0.5);
        assert!((two_mode_pure_pcorr(1.0, 0.5).unwrap() - 0.995400).abs() < 1e-6);
        // p and 1 - p describe the same pair of priors.
        assert_eq!(two_mode_mixed_pcorr(0.4, 0.75).unwrap(), two_mode_mixed_pcorr(0.4, 0.25).unwrap());
        assert!(two_mode_mixed_pcorr(0.4, 0.0).is_err());
        assert!(two_mode_mixed_pcorr(0.4, 1.2).is_err());
        assert!(two_mode_mixed_pcorr(-0.1, 0.5).is_err());
        assert_eq!(two_mode_mixed_pcorr(0.0, 0.25).unwrap(), 0.75);
    }

    #[test]
    fn three_mode_values() {
        assert_eq!(three_mode_mixed_pcorr(0.0, TAIL).unwrap().value, 0.25);
        assert!(three_mode_mixed_pcorr(3.0, TAIL).unwrap().value > 0.999);
        assert_eq!(three_mode_pure_pcorr(0.0).unwrap(), 0.25);
        let e = (-4.0f64).exp();
        let expected = 0.25 * (1.0 + (1.0 - e).sqrt()).powi(2);
        assert!((three_mode_pure_pcorr(1.0).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.990821).abs() < 1e-6);
        assert_eq!(three_mode_subspace_pcorr(0).unwrap(), 0.25);
        assert!((three_mode_subspace_pcorr(1).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn four_mode_values() {
        assert_eq!(four_mode_mixed_pcorr(0.0).unwrap(), 0.25);
        assert_eq!(four_mode_unambiguous(0.0).unwrap(), 0.0);
        assert!((four_mode_pure_pcorr(0.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((four_mode_mixed_pcorr(1.0).unwrap() - 0.98627).abs() < 1e-5);
    }

    #[test]
    fn phase_encoded_limits() {
        assert_eq!(phase_encoded_mixed_pcorr(0.0, TAIL).unwrap().value, 0.25);
        assert_eq!(phase_encoded_pure_pcorr(0.0).unwrap(), 0.25);
        // Approaching the origin from above.
        let near = phase_encoded_pure_pcorr(1e-4).unwrap();
        assert!((near - 0.25).abs() < 1e-3);
        assert!(phase_encoded_pure_pcorr(30.0).unwrap() <= 1.0);
        assert!((phase_encoded_subspace_pcorr(1).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn phase_encoded_pure_matches_gram_path() {
        for a in [0.1, 0.5, 0.9, 1.4, 2.2] {
            let x: f64 = a * a;
            let f = Complex64::from_polar((-x).exp(), x);
            let g = crate::symmetric::GramMatrix::circulant(&[
                Complex64::new(1.0, 0.0),
                f,
                Complex64::new((-2.0 * x).exp(), 0.0),
                f.conj(),
            ])
            .unwrap();
            let via_gram = srm_success_from_gram(&g).unwrap();
            assert!((phase_encoded_pure_pcorr(a).unwrap() - via_gram).abs() < 1e-12, "|α|={a}");
        }
    }

    #[test]
    fn pure_values_match_coherent_gram() {
        for family in [Family::ThreeMode, Family::FourMode, Family::PhaseEncoded] {
            for a in [0.2, 0.6, 1.1] {
                let sp = spec(family, a);
                let states = sp.coherent_states().unwrap();
                let row: Vec<Complex64> = states.iter().map(|s| states[0].overlap(s).unwrap()).collect();
                let g = crate::symmetric::GramMatrix::circulant(&row).unwrap();
                let expected = srm_success_from_gram(&g).unwrap();
                let got = family_pcorr(&sp, Variant::Pure, None, TAIL).unwrap().value;
                assert!((got - expected).abs() < 1e-12, "{family} |α|={a}");
            }
        }
    }

    #[test]
    fn mixed_series_match_gram_sums() {
        for family in [Family::TwoMode, Family::ThreeMode, Family::FourMode, Family::PhaseEncoded] {
            for a in [0.3, 0.7, 1.0, 1.2] {
                let sp = spec(family, a);
                let closed = family_pcorr(&sp, Variant::Mixed, None, TAIL).unwrap().value;
                let series = mixed_pcorr_from_series(&decompose(&sp, TAIL).unwrap()).unwrap();
                assert!((closed - series).abs() < 1e-10, "{family} |α|={a}");
            }
        }
    }

    #[test]
    fn p1bit_overlap_cases() {
        let z = Complex64::new(0.0, 0.0);
        assert!((p1bit_from_overlaps(z, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((p1bit_from_overlaps(Complex64::new(1.0, 0.0), 1.0).unwrap() - 0.5).abs() < 1e-15);
        for f in [0.1, 0.4, 0.8] {
            let got = p1bit_from_overlaps(Complex64::new(f, 0.0), f * f).unwrap();
            assert!((got - 0.5 * (1.0 + (1.0 - f * f).sqrt())).abs() < 1e-14);
        }
        assert!(p1bit_from_overlaps(Complex64::new(1.5, 0.0), 0.0).is_err());
        // Not realizable by any Gram matrix: negative radicand.
        assert!(matches!(
            p1bit_from_overlaps(Complex64::new(0.9, 0.0), 0.0),
            Err(Error::InvalidOverlap { .. })
        ));
    }

    #[test]
    fn p1bit_values() {
        let v = family_p1bit(&spec(Family::FourMode, 1.0), Variant::Mixed, TAIL).unwrap().value;
        assert!((v - (1.0 - (-4.0f64).exp() / 2.0)).abs() < 1e-12);
        assert!((v - 0.990842).abs() < 1e-6);
        for family in Family::COHERENT {
            for variant in Variant::ALL {
                let v = family_p1bit(&spec(family, 0.0), variant, TAIL).unwrap().value;
                assert!((v - 0.5).abs() < 1e-15, "{family} {variant}");
            }
        }
    }

    #[test]
    fn bot_relations() {
        for i in 1..=20 {
            let a = 0.1 * i as f64;
            let three = spec(Family::ThreeMode, a);
            let p = family_p1bit(&three, Variant::Pure, TAIL).unwrap().value;
            let b = family_bot(&three, Variant::Pure, TAIL).unwrap().value;
            assert!((b - p * p).abs() < 1e-10);
            for (family, variant) in [
                (Family::ThreeMode, Variant::Mixed),
                (Family::FourMode, Variant::Pure),
                (Family::FourMode, Variant::Mixed),
            ] {
                let sp = spec(family, a);
                let p = family_p1bit(&sp, variant, TAIL).unwrap().value;
                let b = family_bot(&sp, variant, TAIL).unwrap().value;
                assert!((b - (1.5 * p - 0.5)).abs() < 1e-10, "{family} {variant} |α|={a}");
            }
        }
        assert!(family_bot(&spec(Family::TwoMode, 1.0), Variant::Pure, TAIL).is_err());
    }

    #[test]
    fn finite_families() {
        let q = family_pcorr(&spec(Family::Qutrit, 0.0), Variant::Pure, None, TAIL).unwrap();
        assert!((q.value - 0.75).abs() < 1e-14);
        let q4 = family_pcorr(&spec(Family::Ququart, 0.0), Variant::Pure, None, TAIL).unwrap();
        assert!((q4.value - 1.0).abs() < 1e-14);
        assert!(family_pcorr(&spec(Family::Qutrit, 0.0), Variant::Mixed, None, TAIL).is_err());
    }

    #[test]
    fn delta_is_zero_at_origin() {
        for family in Family::COHERENT {
            assert!(delta_pcorr(&spec(family, 0.0), TAIL).unwrap().abs() < 1e-15);
        }
        let s = spec(Family::ThreeMode, 1.0);
        let expected = three_mode_pure_pcorr(1.0).unwrap() - three_mode_mixed_pcorr(1.0, TAIL).unwrap().value;
        assert_eq!(delta_pcorr(&s, TAIL).unwrap(), expected);
    }

    #[test]
    fn dispatcher_rejects_invalid_combinations() {
        assert!(evaluate(Family::ThreeMode, Variant::Pure, Metric::PUnambiguous, 1.0, None, TAIL).is_err());
        assert!(evaluate(Family::ThreeMode, Variant::Pure, Metric::PCorr, 1.0, Some(0.3), TAIL).is_err());
        assert!(evaluate(Family::TwoMode, Variant::Pure, Metric::P1Bit, 1.0, Some(0.3), TAIL).is_err());
        let p = evaluate(Family::TwoMode, Variant::Mixed, Metric::PCorr, 1.0, Some(0.25), TAIL).unwrap();
        assert!((p.value - (1.0 - 0.25 * (-2.0f64).exp())).abs() < 1e-15);
        assert_eq!(p.series_terms, 0);
        let s = evaluate(Family::ThreeMode, Variant::Mixed, Metric::PCorr, 1.0, None, TAIL).unwrap();
        assert!(s.series_terms > 1);
        assert_eq!("b_ot".parse::<Metric>().unwrap(), Metric::BOt);
        assert!("p_x".parse::<Metric>().is_err());
    }
}
