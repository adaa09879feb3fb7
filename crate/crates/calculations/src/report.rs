use bundle::CheckResult;
use serde::Serialize;

use crate::ReturnOrbitTable;

/// The outcome of one calculation: named sub-checks plus the artifacts
/// that justify them.
#[derive(Clone, Debug, Serialize)]
pub struct CalcReport {
    pub id: u8,
    pub title: String,
    pub checks: Vec<CheckResult>,
    /// Intersecting `(G_i, H_j)` pairs (Calculations 1–2).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<(String, String)>,
    /// Return chains (Calculations 3–5, 7).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chains: Option<ReturnOrbitTable>,
    /// Named six-times volumes.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub volumes: Vec<(String, i64)>,
    /// Free-form facts worth recording (chosen orientations, sample points).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CalcReport {
    pub(crate) fn new(id: u8, title: &str) -> Self {
        CalcReport {
            id,
            title: title.to_string(),
            checks: Vec::new(),
            pairs: Vec::new(),
            chains: None,
            volumes: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn check(&mut self, name: &str, detail: String, failures: Vec<String>) {
        self.checks.push(CheckResult::new(name, detail, failures));
    }

    pub(crate) fn assert(&mut self, name: &str, ok: bool, detail: String) {
        let failures = if ok { Vec::new() } else { vec![detail.clone()] };
        self.check(name, detail, failures);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}
