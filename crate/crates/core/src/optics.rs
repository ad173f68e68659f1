//! Balanced beam-splitter networks acting on coherent amplitudes, with
//! threshold detection.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::CoherentStateVector;
use crate::symmetric::{Family, SymmetricFamilySpec};

/// Output amplitudes below this magnitude count as an empty port.
pub const EMPTY_PORT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Element {
    /// `(a_i, a_j) → ((a_i + a_j)/√2, (a_i - a_j)/√2)`.
    BeamSplitter(usize, usize),
    /// `a_i → e^{iφ} a_i`.
    PhaseShift(usize, f64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detector {
    pub name: String,
    pub mode: usize,
    /// State label announced when this detector clicks.
    pub label: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearCircuit {
    modes: usize,
    elements: Vec<Element>,
    detectors: Vec<Detector>,
}

impl LinearCircuit {
    pub fn new(modes: usize, elements: Vec<Element>, detectors: Vec<Detector>) -> Result<Self> {
        let check = |index: usize| {
            if index < modes {
                Ok(())
            } else {
                Err(Error::ModeOutOfRange { index, modes })
            }
        };
        for e in &elements {
            match *e {
                Element::BeamSplitter(i, j) => {
                    check(i)?;
                    check(j)?;
                    if i == j {
                        return Err(Error::InvalidArgument(format!(
                            "beam splitter needs two distinct modes, got ({i}, {j})"
                        )));
                    }
                }
                Element::PhaseShift(i, phi) => {
                    check(i)?;
                    if !phi.is_finite() {
                        return Err(Error::NonFinite("phase shift"));
                    }
                }
            }
        }
        for (k, d) in detectors.iter().enumerate() {
            check(d.mode)?;
            if let Some(prev) = detectors[..k].iter().find(|p| p.mode == d.mode) {
                return Err(Error::AmbiguousIdentification {
                    detector: format!("on mode {}", d.mode),
                    first: prev.label.clone(),
                    second: d.label.clone(),
                });
            }
        }
        Ok(Self {
            modes,
            elements,
            detectors,
        })
    }

    /// Named presets: `bs2` and `fig3`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "bs2" => Ok(Self::bs2()),
            "fig3" => Ok(Self::fig3()),
            _ => Err(Error::InvalidArgument(format!("unknown circuit preset `{name}`"))),
        }
    }

    pub const PRESETS: [&'static str; 2] = ["bs2", "fig3"];

    /// One balanced beam splitter; a click in the sum port means `|α,α⟩`, in
    /// the difference port `|α,-α⟩`.
    pub fn bs2() -> Self {
        Self::new(
            2,
            vec![Element::BeamSplitter(0, 1)],
            vec![detector("D1", 0, "0"), detector("D2", 1, "1")],
        )
        .expect("valid preset")
    }

    /// Four-mode network: BS1 on modes (0,1), BS2 on (2,3), then BS3 on (1,2)
    /// and BS4 on (0,3).
    pub fn fig3() -> Self {
        Self::new(
            4,
            vec![
                Element::BeamSplitter(0, 1),
                Element::BeamSplitter(2, 3),
                Element::BeamSplitter(1, 2),
                Element::BeamSplitter(0, 3),
            ],
            vec![
                detector("D1", 1, "11"),
                detector("D2", 2, "10"),
                detector("D3", 0, "00"),
                detector("D4", 3, "01"),
            ],
        )
        .expect("valid preset")
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn detectors(&self) -> &[Detector] {
        &self.detectors
    }

    /// Detector announcing `label`, if any.
    pub fn detector_for(&self, label: &str) -> Option<&Detector> {
        self.detectors.iter().find(|d| d.label == label)
    }

    /// Applies the network to a raw amplitude vector. The same linear map
    /// acts on single-photon states written in the mode basis.
    pub fn apply_amplitudes(&self, input: &[Complex64]) -> Result<Vec<Complex64>> {
        if input.len() != self.modes {
            return Err(Error::DimensionMismatch {
                expected: self.modes,
                found: input.len(),
            });
        }
        let mut a = input.to_vec();
        for e in &self.elements {
            match *e {
                Element::BeamSplitter(i, j) => {
                    let (x, y) = (a[i], a[j]);
                    a[i] = (x + y) * FRAC_1_SQRT_2;
                    a[j] = (x - y) * FRAC_1_SQRT_2;
                }
                Element::PhaseShift(i, phi) => a[i] *= Complex64::from_polar(1.0, phi),
            }
        }
        Ok(a)
    }
}

fn detector(name: &str, mode: usize, label: &str) -> Detector {
    Detector {
        name: name.into(),
        mode,
        label: label.into(),
    }
}

pub fn apply_circuit(c: &LinearCircuit, input: &CoherentStateVector) -> Result<CoherentStateVector> {
    CoherentStateVector::new(c.apply_amplitudes(input.amplitudes())?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectorClick {
    pub name: String,
    pub mode: usize,
    pub label: String,
    pub amplitude: Complex64,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClickDistribution {
    pub clicks: Vec<DetectorClick>,
    /// Probability that no detector fires.
    pub no_click: f64,
}

impl ClickDistribution {
    /// Detectors whose port carries light.
    pub fn lit(&self) -> impl Iterator<Item = &DetectorClick> {
        self.clicks
            .iter()
            .filter(|c| c.amplitude.norm() > EMPTY_PORT_TOLERANCE)
    }

    /// Label of the unique lit detector, when exactly one is lit.
    pub fn identified(&self) -> Option<&str> {
        let mut lit = self.lit();
        match (lit.next(), lit.next()) {
            (Some(c), None) => Some(&c.label),
            _ => None,
        }
    }

    /// Probability that detector `k` clicks and every other detector stays dark.
    pub fn exclusive_click(&self, k: usize) -> f64 {
        let others: f64 = self
            .clicks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, c)| c.amplitude.norm_sqr())
            .sum();
        self.clicks[k].probability * (-others).exp()
    }
}

/// Threshold-detector statistics. A global input phase drops out of every
/// `|β_d|`, so the same numbers hold for phase-randomized inputs.
pub fn click_statistics(c: &LinearCircuit, input: &CoherentStateVector) -> Result<ClickDistribution> {
    let out = c.apply_amplitudes(input.amplitudes())?;
    let clicks = c
        .detectors()
        .iter()
        .map(|d| {
            let beta = out[d.mode];
            DetectorClick {
                name: d.name.clone(),
                mode: d.mode,
                label: d.label.clone(),
                amplitude: beta,
                probability: -(-beta.norm_sqr()).exp_m1(),
            }
        })
        .collect();
    let dark: f64 = c.detectors().iter().map(|d| out[d.mode].norm_sqr()).sum();
    Ok(ClickDistribution {
        clicks,
        no_click: (-dark).exp(),
    })
}

/// Minimum-error success of the circuit: a lone click names the state, no
/// click triggers a guess of the likeliest label, and multiple clicks count
/// as errors. Priors default to uniform.
pub fn min_error_via_circuit(
    c: &LinearCircuit,
    spec: &SymmetricFamilySpec,
    priors: Option<&[f64]>,
) -> Result<f64> {
    let family = spec.family;
    let labels = family.labels();
    let uniform = vec![1.0 / labels.len() as f64; labels.len()];
    let priors = priors.unwrap_or(&uniform);
    if priors.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            found: priors.len(),
        });
    }
    if priors.iter().any(|p| !(*p >= 0.0)) || (priors.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument("priors must be non-negative and sum to 1".into()));
    }
    let detector_index = labels
        .iter()
        .map(|l| {
            c.detectors().iter().position(|d| d.label == *l).ok_or_else(|| {
                Error::InvalidArgument(format!("no detector identifies label `{l}` of {family}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if matches!(family, Family::Qutrit | Family::Ququart) {
        return Err(Error::Unsupported {
            family: family.tag().into(),
            what: "coherent-state circuit inputs".into(),
        });
    }
    let inputs = spec.coherent_states()?;
    let mut success = 0.0;
    let mut guess: f64 = 0.0;
    for ((input, &p), &k) in inputs.iter().zip(priors).zip(&detector_index) {
        let stats = click_statistics(c, input)?;
        success += p * stats.exclusive_click(k);
        guess = guess.max(p * stats.no_click);
    }
    Ok(success + guess)
}
