//! Per-scenario reports. Everything here is deterministic: no timings, no
//! hash-map iteration order.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL: &str = "fusionkit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    RefusedPrecondition,
    Evidence,
}

impl Status {
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub status: Status,
    /// Computed verdicts and data.
    pub value: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckRecord {
    pub fn new(check: impl Into<String>, status: Status, value: Value) -> Self {
        CheckRecord { check: check.into(), status, value, expected: None, detail: None, witness: None }
    }

    /// Pass when `actual` matches `expected` (default `true`).
    pub fn verdict(check: impl Into<String>, actual: bool, expected: Option<bool>, value: Value) -> Self {
        let status = if actual == expected.unwrap_or(true) { Status::Pass } else { Status::Fail };
        CheckRecord { expected, ..Self::new(check, status, value) }
    }

    pub fn refused(check: impl Into<String>, why: impl Into<String>) -> Self {
        CheckRecord { detail: Some(why.into()), ..Self::new(check, Status::RefusedPrecondition, Value::Null) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub scenario: String,
    pub input_sha256: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(scenario: &str, input_sha256: String, checks: Vec<CheckRecord>) -> Self {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            scenario: scenario.into(),
            input_sha256,
            passed: !checks.iter().any(|c| c.status.is_failure()),
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check == name)
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = format!("{} [{}]\n", self.scenario, if self.passed { "ok" } else { "FAILED" });
        for c in &self.checks {
            let status = serde_json::to_value(c.status).unwrap();
            out.push_str(&format!("  {:<22} {}", c.check, status.as_str().unwrap()));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub tool: String,
    pub version: String,
    pub oracle: bool,
    pub seed: u64,
    pub passed: bool,
    pub reports: Vec<Report>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Pretty JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
