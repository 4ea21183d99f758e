//! Machine-readable verification reports.
//!
//! Field order is fixed by the struct declarations and serde keeps it, so
//! serialized reports are stable byte-for-byte for identical inputs.

use serde::{Deserialize, Serialize};

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub parameters: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub total: usize,
    pub failed: usize,
}

/// A full verification run: per-check records plus the tally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckRecord>,
    pub summary: VerifySummary,
}

impl VerifyReport {
    /// Builds the report; the summary is derived from the records.
    pub fn new(checks: Vec<CheckRecord>) -> Self {
        let failed = checks.iter().filter(|c| !c.pass).count();
        let summary = VerifySummary { total: checks.len(), failed };
        VerifyReport { checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
