use std::fmt::Write;

use qsd_core::optics::{click_statistics, LinearCircuit};
use qsd_core::phase_rand::CoherentStateVector;
use qsd_core::symmetric::Family;
use qsd_core::Complex64;

use crate::error::{CliError, Result};
use crate::format::sig12;

/// What to send into a preset circuit.
#[derive(Clone, Debug, PartialEq)]
pub enum CircuitInput {
    /// A member of the family the preset was built for, at amplitude `|α|`.
    State { label: String, alpha_abs: f64 },
    Amplitudes(Vec<Complex64>),
}

/// Family whose states a preset discriminates.
pub fn preset_family(preset: &str) -> Result<Family> {
    match preset {
        "bs2" => Ok(Family::TwoMode),
        "fig3" => Ok(Family::FourMode),
        other => Err(CliError::Usage(format!(
            "unknown circuit preset `{other}` (available: {})",
            LinearCircuit::PRESETS.join(", ")
        ))),
    }
}

/// Parses comma-separated mode amplitudes, each `re` or `re:im`.
pub fn parse_amplitudes(s: &str) -> Result<Vec<Complex64>> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let num = |t: &str| {
                t.parse::<f64>()
                    .map_err(|e| CliError::Usage(format!("amplitude `{tok}`: {e}")))
            };
            match tok.split_once(':') {
                Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
                None => Ok(Complex64::new(num(tok)?, 0.0)),
            }
        })
        .collect()
}

/// Per-detector click probabilities and the identified label.
pub fn circuit_report(preset: &str, input: &CircuitInput) -> Result<String> {
    let family = preset_family(preset)?;
    let circuit = LinearCircuit::preset(preset)?;
    let (state, description) = match input {
        CircuitInput::State { label, alpha_abs } => {
            let k = family.label_index(label).ok_or_else(|| {
                CliError::Usage(format!(
                    "`{label}` is not a {family} label (expected one of {})",
                    family.labels().join(", ")
                ))
            })?;
            let states = family.coherent_states(*alpha_abs)?;
            (states[k].clone(), format!("state {label}, |alpha| = {alpha_abs}"))
        }
        CircuitInput::Amplitudes(a) => {
            if a.len() != circuit.modes() {
                return Err(CliError::Usage(format!(
                    "preset {preset} has {} modes, got {} amplitudes",
                    circuit.modes(),
                    a.len()
                )));
            }
            (CoherentStateVector::new(a.clone())?, "raw amplitudes".to_string())
        }
    };
    let stats = click_statistics(&circuit, &state)?;
    let mut out = String::new();
    writeln!(out, "circuit {preset}, {description}").unwrap();
    writeln!(out, "detector,mode,label,click_probability").unwrap();
    for c in &stats.clicks {
        writeln!(out, "{},{},{},{}", c.name, c.mode, c.label, sig12(c.probability)).unwrap();
    }
    writeln!(out, "no_click,{}", sig12(stats.no_click)).unwrap();
    writeln!(out, "identified,{}", stats.identified().unwrap_or("none")).unwrap();
    Ok(out)
}
