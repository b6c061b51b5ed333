use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::fgab::Int;

/// A concrete element demonstrating a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Where the element lives, e.g. `"Kn"` or `"K1(I1)"`.
    pub group: String,
    pub element: Vec<i64>,
}

impl Witness {
    pub fn new(group: impl Into<String>, element: &[Int]) -> Self {
        Witness {
            group: group.into(),
            element: element
                .iter()
                .map(|v| v.to_i64().expect("witness coordinates fit in i64"))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    /// Check family, e.g. `"ideal-exactness"`.
    pub check: String,
    /// What the check ran on, e.g. an ideal id or a pair of ids.
    pub scope: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

/// Ordered list of check outcomes. Never short-circuits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport::default()
    }

    pub fn pass(&mut self, check: &str, scope: impl Into<String>) {
        self.checks.push(CheckResult {
            check: check.to_string(),
            scope: scope.into(),
            passed: true,
            detail: String::new(),
            witness: None,
        });
    }

    pub fn fail(
        &mut self,
        check: &str,
        scope: impl Into<String>,
        detail: impl Into<String>,
        witness: Option<Witness>,
    ) {
        self.checks.push(CheckResult {
            check: check.to_string(),
            scope: scope.into(),
            passed: false,
            detail: detail.into(),
            witness,
        });
    }

    /// Records `outcome`: `Ok(())` passes, `Err((detail, witness))` fails.
    pub fn record(
        &mut self,
        check: &str,
        scope: impl Into<String>,
        outcome: Result<(), (String, Option<Witness>)>,
    ) {
        match outcome {
            Ok(()) => self.pass(check, scope),
            Err((detail, witness)) => self.fail(check, scope, detail, witness),
        }
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Distinct names of failed checks, in report order.
    pub fn failed_checks(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for c in self.failures() {
            if !out.contains(&c.check) {
                out.push(c.check.clone());
            }
        }
        out
    }

    pub fn first_failure(&self, check: &str) -> Option<&CheckResult> {
        self.failures().find(|c| c.check == check)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{status:4}  {:<20} {}", c.check, c.scope)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            if let Some(w) = &c.witness {
                write!(f, " [witness {:?} in {}]", w.element, w.group)?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}
