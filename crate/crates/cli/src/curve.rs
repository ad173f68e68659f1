use qsd_core::discrimination::{evaluate, Metric, Variant};
use qsd_core::symmetric::Family;
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::format::sig12;
use crate::grid::Grid;

#[derive(Clone, Debug, PartialEq)]
pub struct CurveRequest {
    pub family: Family,
    pub metric: Metric,
    pub variants: Vec<Variant>,
    pub grid: Grid,
    pub prior: Option<f64>,
    pub tail_tol: f64,
    /// Use each variant's `P_1bit` as its independent column.
    pub parametric: bool,
    pub parallel: bool,
}

impl CurveRequest {
    fn validate(&self) -> Result<()> {
        if self.variants.is_empty() {
            return Err(CliError::Usage("at least one variant is required".into()));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return Err(CliError::Usage(format!("tail tolerance {} must lie in (0, 1)", self.tail_tol)));
        }
        if self.parametric && matches!(self.metric, Metric::P1Bit | Metric::DeltaPCorr) {
            return Err(CliError::Usage(format!(
                "a parametric curve against p_1bit needs a metric other than {}",
                self.metric
            )));
        }
        if self.parametric && self.family == Family::TwoMode {
            return Err(CliError::Usage("two_mode encodes a single bit; nothing to plot against p_1bit".into()));
        }
        Ok(())
    }

    /// Column names, one per output value of a row. `delta_p_corr` is a single
    /// pure-minus-mixed column whatever the variants.
    pub fn header(&self) -> Vec<String> {
        let metric = self.metric.tag();
        if self.metric == Metric::DeltaPCorr {
            return vec!["alpha_abs".into(), metric.into()];
        }
        let mut cols = Vec::new();
        if self.parametric {
            for v in &self.variants {
                cols.push(format!("{}_{v}", Metric::P1Bit.tag()));
                cols.push(format!("{metric}_{v}"));
            }
            cols.push("alpha_abs".into());
        } else {
            cols.push("alpha_abs".into());
            cols.extend(self.variants.iter().map(|v| format!("{metric}_{v}")));
        }
        cols
    }

    fn row(&self, alpha: f64) -> Result<Vec<f64>> {
        let value = |variant, metric, prior| -> Result<f64> {
            Ok(evaluate(self.family, variant, metric, alpha, prior, self.tail_tol)?.value)
        };
        if self.metric == Metric::DeltaPCorr {
            return Ok(vec![alpha, value(Variant::Pure, Metric::DeltaPCorr, None)?]);
        }
        let mut row = Vec::new();
        if self.parametric {
            for &v in &self.variants {
                row.push(value(v, Metric::P1Bit, None)?);
                row.push(value(v, self.metric, self.prior)?);
            }
            row.push(alpha);
        } else {
            row.push(alpha);
            for &v in &self.variants {
                row.push(value(v, self.metric, self.prior)?);
            }
        }
        Ok(row)
    }
}

/// Evaluates the curve and renders it as CSV. Rows follow grid order whether
/// or not points are evaluated in parallel.
pub fn curve_csv(req: &CurveRequest) -> Result<String> {
    req.validate()?;
    let points = req.grid.points();
    let rows: Vec<Vec<f64>> = if req.parallel {
        points.par_iter().map(|&a| req.row(a)).collect::<Result<_>>()?
    } else {
        points.iter().map(|&a| req.row(a)).collect::<Result<_>>()?
    };
    let mut out = req.header().join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(sig12).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(family: Family, metric: Metric) -> CurveRequest {
        CurveRequest {
            family,
            metric,
            variants: vec![Variant::Pure, Variant::Mixed],
            grid: Grid::new(0.0, 3.0, 31).unwrap(),
            prior: None,
            tail_tol: 1e-12,
            parametric: false,
            parallel: false,
        }
    }

    #[test]
    fn three_mode_header_and_start() {
        let csv = curve_csv(&request(Family::ThreeMode, Metric::PCorr)).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("alpha_abs,p_corr_pure,p_corr_mixed"));
        assert_eq!(lines.next(), Some("0,0.25,0.25"));
        assert_eq!(csv.lines().count(), 32);
    }

    #[test]
    fn parallel_output_is_identical() {
        let mut req = request(Family::PhaseEncoded, Metric::BOt);
        let serial = curve_csv(&req).unwrap();
        req.parallel = true;
        assert_eq!(curve_csv(&req).unwrap(), serial);
    }

    #[test]
    fn parametric_columns() {
        let mut req = request(Family::PhaseEncoded, Metric::BOt);
        req.parametric = true;
        assert_eq!(
            req.header(),
            ["p_1bit_pure", "b_ot_pure", "p_1bit_mixed", "b_ot_mixed", "alpha_abs"]
        );
        let csv = curve_csv(&req).unwrap();
        assert!(csv.lines().nth(1).unwrap().starts_with("0.5,0.25,0.5,0.25,0"));
    }

    #[test]
    fn delta_is_one_column() {
        let csv = curve_csv(&request(Family::FourMode, Metric::DeltaPCorr)).unwrap();
        assert_eq!(csv.lines().next(), Some("alpha_abs,delta_p_corr"));
        assert_eq!(csv.lines().nth(1), Some("0,0"));
    }

    #[test]
    fn invalid_combinations_are_usage_errors() {
        let mut req = request(Family::ThreeMode, Metric::PCorr);
        req.prior = Some(0.25);
        assert!(matches!(curve_csv(&req), Err(CliError::Usage(_))));
        let req = request(Family::TwoMode, Metric::BOt);
        assert!(matches!(curve_csv(&req), Err(CliError::Usage(_))));
        let req = request(Family::ThreeMode, Metric::PUnambiguous);
        assert!(matches!(curve_csv(&req), Err(CliError::Usage(_))));
        let mut req = request(Family::FourMode, Metric::P1Bit);
        req.parametric = true;
        assert!(matches!(curve_csv(&req), Err(CliError::Usage(_))));
        req.variants.clear();
        req.parametric = false;
        assert!(matches!(curve_csv(&req), Err(CliError::Usage(_))));
    }
}
