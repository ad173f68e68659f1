//! Command-line front end: CSV curve generation, verification suites and
//! circuit click statistics.

mod circuit;
mod curve;
mod error;
mod format;
mod grid;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qsd_core::discrimination::{Metric, Variant};
use qsd_core::oracle::{run_suite, Suite};
use qsd_core::symmetric::Family;

pub use circuit::{circuit_report, parse_amplitudes, preset_family, CircuitInput};
pub use curve::{curve_csv, CurveRequest};
pub use error::{CliError, Result};
pub use format::sig12;
pub use grid::Grid;

/// Environment variable overriding the default series tail tolerance.
pub const TAIL_TOL_ENV: &str = "QSD_TAIL_TOL";

#[derive(Debug, Parser)]
#[command(name = "qsd", version, about = "Discrimination of pure and phase-randomized symmetric coherent states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a probability curve over an amplitude grid as CSV.
    Curve(CurveArgs),
    /// Run verification suites and print one line per check.
    Verify {
        /// all, fock, gram, families, appendix_a, appendix_b or circuit.
        suite: Suite,
    },
    /// Click statistics of a preset linear-optics circuit.
    Circuit(CircuitArgs),
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// two_mode, three_mode, four_mode, phase_encoded, qutrit or ququart.
    #[arg(long)]
    pub family: Family,
    /// p_corr, p_1bit, b_ot, p_unambiguous or delta_p_corr.
    #[arg(long)]
    pub metric: Metric,
    /// Comma-separated variants; ignored by delta_p_corr.
    #[arg(long, value_delimiter = ',', default_value = "pure,mixed")]
    pub variants: Vec<Variant>,
    /// Amplitude grid `min:max:steps`, endpoints included.
    #[arg(long, default_value = "0:3:301")]
    pub alpha: Grid,
    /// Prior of the first two-state member; only min(p, 1-p) matters.
    #[arg(long)]
    pub prior: Option<f64>,
    /// Poisson tail tolerance for series truncation.
    #[arg(long)]
    pub tail_tol: Option<f64>,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Evaluate grid points concurrently.
    #[arg(long)]
    pub parallel: bool,
    /// Tabulate against each variant's p_1bit instead of |alpha|.
    #[arg(long)]
    pub parametric: bool,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["state", "amplitudes"])))]
pub struct CircuitArgs {
    /// bs2 or fig3.
    pub preset: String,
    /// Family label of the input state.
    #[arg(long, requires = "alpha")]
    pub state: Option<String>,
    /// Comma-separated mode amplitudes, each `re` or `re:im`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha")]
    pub amplitudes: Option<String>,
    /// Amplitude |alpha| of the family state.
    #[arg(long)]
    pub alpha: Option<f64>,
}

/// Tail tolerance from the flag, else the environment, else the default.
pub fn resolve_tail_tol(flag: Option<f64>, env: Option<&str>) -> Result<f64> {
    match (flag, env) {
        (Some(t), _) => Ok(t),
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("{TAIL_TOL_ENV}=`{s}`: {e}"))),
        (None, None) => Ok(qsd_core::DEFAULT_TAIL_TOL),
    }
}

fn write_out(text: &str, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            context: format!("writing {}", p.display()),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                context: "writing stdout".into(),
                source,
            }),
    }
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Curve(a) => {
            let env = std::env::var(TAIL_TOL_ENV).ok();
            let req = CurveRequest {
                family: a.family,
                metric: a.metric,
                variants: a.variants,
                grid: a.alpha,
                prior: a.prior,
                tail_tol: resolve_tail_tol(a.tail_tol, env.as_deref())?,
                parametric: a.parametric,
                parallel: a.parallel,
            };
            write_out(&curve_csv(&req)?, a.output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let report = run_suite(suite);
            write_out(&report.to_string(), None)?;
            let failed = report.failures().count();
            let total = report.checks.len();
            write_out(&format!("{} of {total} checks passed\n", total - failed), None)?;
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Circuit(a) => {
            let input = match (a.state, a.amplitudes) {
                (Some(label), None) => CircuitInput::State {
                    label,
                    alpha_abs: a.alpha.expect("clap requires --alpha with --state"),
                },
                (None, Some(raw)) => CircuitInput::Amplitudes(parse_amplitudes(&raw)?),
                _ => unreachable!("clap enforces exactly one input"),
            };
            write_out(&circuit_report(&a.preset, &input)?, None)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_tolerance_precedence() {
        assert_eq!(resolve_tail_tol(Some(1e-8), Some("1e-6")).unwrap(), 1e-8);
        assert_eq!(resolve_tail_tol(None, Some("1e-6")).unwrap(), 1e-6);
        assert_eq!(resolve_tail_tol(None, None).unwrap(), qsd_core::DEFAULT_TAIL_TOL);
        assert!(resolve_tail_tol(None, Some("tiny")).is_err());
    }

    #[test]
    fn parses_curve_flags() {
        let cli = Cli::try_parse_from([
            "qsd", "curve", "--family", "two_mode", "--metric", "p_corr", "--prior", "0.25",
            "--alpha", "0:2:5", "--variants", "mixed",
        ])
        .unwrap();
        let Command::Curve(a) = cli.command else { panic!() };
        assert_eq!(a.family, Family::TwoMode);
        assert_eq!(a.variants, vec![Variant::Mixed]);
        assert_eq!(a.alpha, Grid::new(0.0, 2.0, 5).unwrap());
        assert_eq!(a.prior, Some(0.25));
    }

    #[test]
    fn circuit_needs_exactly_one_input() {
        assert!(Cli::try_parse_from(["qsd", "circuit", "fig3"]).is_err());
        assert!(Cli::try_parse_from(["qsd", "circuit", "fig3", "--state", "00"]).is_err());
        assert!(Cli::try_parse_from(["qsd", "circuit", "bs2", "--amplitudes", "1,1", "--state", "0", "--alpha", "1"]).is_err());
        assert!(Cli::try_parse_from(["qsd", "circuit", "bs2", "--amplitudes", "-1,1"]).is_ok());
    }
}
