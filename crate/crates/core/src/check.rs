//! Pass/fail verdicts with witnesses.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Basis indices (or group element indices) of the first violation found.
    pub tuple: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Number of instances examined, for exhaustive checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check { name: name.into(), passed: true, witness: None, count: None }
    }

    pub fn fail(name: &str, tuple: Vec<usize>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed: false, witness: Some(Witness { tuple, detail: detail.into() }), count: None }
    }

    pub fn from_witness(name: &str, w: Option<Witness>) -> Self {
        Check { name: name.into(), passed: w.is_none(), witness: w, count: None }
    }

    pub fn with_count(mut self, n: usize) -> Self {
        self.count = Some(n);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn summary(&self) -> String {
        let names: Vec<&str> = self.failures().map(|c| c.name.as_str()).collect();
        if names.is_empty() { "all checks passed".into() } else { format!("failed: {}", names.join(", ")) }
    }
}

pub(crate) fn witness(tuple: Vec<usize>, detail: impl Into<String>) -> Witness {
    Witness { tuple, detail: detail.into() }
}
