use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A confirmation or a counterexample recorded by a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub violation: bool,
    pub detail: String,
}

/// Outcome of one check on one family.
///
/// `passed` is true exactly when no violation witness has been recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    passed: bool,
    pub witnesses: Vec<Witness>,
    pub metrics: BTreeMap<String, u64>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            witnesses: Vec::new(),
            metrics: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn confirm(&mut self, detail: impl Into<String>) {
        self.witnesses.push(Witness {
            violation: false,
            detail: detail.into(),
        });
    }

    pub fn violate(&mut self, detail: impl Into<String>) {
        self.passed = false;
        self.witnesses.push(Witness {
            violation: true,
            detail: detail.into(),
        });
    }

    pub fn metric(&mut self, key: &str, value: u64) {
        self.metrics.insert(key.to_string(), value);
    }

    pub fn first_violation(&self) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.violation)
    }
}
