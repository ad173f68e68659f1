use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub id: String,
    pub max_error: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn new(id: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            max_error,
            tolerance,
        }
    }

    /// A check whose evaluation failed outright is recorded with an infinite
    /// error.
    pub fn from_result(id: impl Into<String>, result: Result<f64>, tolerance: f64) -> Self {
        Self::new(id, result.unwrap_or(f64::INFINITY), tolerance)
    }

    pub fn passed(&self) -> bool {
        self.max_error.is_finite() && self.max_error <= self.tolerance
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {}  {:.3e}", self.id, self.max_error)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Fock,
    Gram,
    Families,
    AppendixA,
    AppendixB,
    Circuit,
}

impl Suite {
    /// Every individual suite, in the order `All` runs them.
    pub const PARTS: [Suite; 6] = [
        Suite::Fock,
        Suite::Gram,
        Suite::Families,
        Suite::AppendixA,
        Suite::AppendixB,
        Suite::Circuit,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Fock => "fock",
            Suite::Gram => "gram",
            Suite::Families => "families",
            Suite::AppendixA => "appendix_a",
            Suite::AppendixB => "appendix_b",
            Suite::Circuit => "circuit",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::PARTS)
            .find(|x| x.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}
