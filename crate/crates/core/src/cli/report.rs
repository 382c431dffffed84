use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::check::{Check, ValidationReport};

/// Machine-readable command result. Key order is fixed, so identical inputs give identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input_sha256: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub objects: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, input: &str) -> Self {
        let digest = Sha256::digest(input.as_bytes());
        Report {
            command: command.into(),
            input_sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
            passed: true,
            checks: Vec::new(),
            objects: BTreeMap::new(),
            elapsed_ms: None,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    /// Adds every check, prefixing names with `prefix/` when non-empty.
    pub fn extend(&mut self, prefix: &str, r: ValidationReport) {
        for mut c in r.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}/{}", c.name);
            }
            self.push(c);
        }
    }

    pub fn object(&mut self, key: &str, v: impl Serialize) {
        self.objects.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {}", c.name));
            if let Some(n) = c.count {
                out.push_str(&format!(" [{n} checked]"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!(" witness {:?}: {}", w.tuple, w.detail));
            }
            out.push('\n');
        }
        out.push_str(if self.passed { "result: pass\n" } else { "result: FAIL\n" });
        out
    }
}
