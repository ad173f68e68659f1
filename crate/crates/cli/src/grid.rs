use std::fmt;
use std::str::FromStr;

/// Inclusive amplitude grid written `min:max:steps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self, String> {
        if !min.is_finite() || !max.is_finite() {
            return Err("grid bounds must be finite".into());
        }
        if min < 0.0 {
            return Err(format!("grid minimum {min} is negative"));
        }
        if max <= min {
            return Err(format!("grid maximum {max} must exceed minimum {min}"));
        }
        if steps < 2 {
            return Err(format!("grid needs at least 2 points, got {steps}"));
        }
        Ok(Self { min, max, steps })
    }

    /// Grid points with both endpoints exact.
    pub fn points(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts[..] else {
            return Err(format!("expected min:max:steps, got `{s}`"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
        let steps = steps
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("`{steps}`: {e}"))?;
        Grid::new(num(min)?, num(max)?, steps)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.steps)
    }
}
