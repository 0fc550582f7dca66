//! Reports produced by the exhaustive axiom and identity sweeps.

use std::collections::BTreeMap;

use serde::Serialize;

/// A single counterexample: which relation failed, on which indices, and
/// the two sides that should have agreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub indices: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
}

impl Violation {
    pub fn new(axiom: &str, indices: &[(&str, i64)], lhs: impl ToString, rhs: impl ToString) -> Self {
        Violation {
            axiom: axiom.to_string(),
            indices: indices.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    /// Number of instances evaluated.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

impl AxiomCheck {
    pub fn from_search(axiom: &str, checked: usize, violation: Option<Violation>) -> Self {
        AxiomCheck {
            axiom: axiom.to_string(),
            passed: violation.is_none(),
            checked,
            violation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub subject: String,
    pub passed: bool,
    pub checks: Vec<AxiomCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>, checks: Vec<AxiomCheck>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        AxiomReport {
            subject: subject.into(),
            passed,
            checks,
            status: None,
        }
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn violations(&self) -> Vec<&Violation> {
        self.checks.iter().filter_map(|c| c.violation.as_ref()).collect()
    }
}
