//! Machine-readable pass/fail records.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::Error;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Result of one named check. Witness values are exact: rationals and
/// polynomials appear as strings, never as floats.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub check: String,
    pub status: Status,
    pub reason: String,
    pub witness: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Certificate {
    fn new(check: &str, status: Status, reason: impl Into<String>) -> Self {
        Certificate {
            schema: SCHEMA,
            check: check.to_string(),
            status,
            reason: reason.into(),
            witness: BTreeMap::new(),
            timing_ms: None,
        }
    }

    pub fn pass(check: &str, reason: impl Into<String>) -> Self {
        Self::new(check, Status::Pass, reason)
    }

    pub fn fail(check: &str, reason: impl Into<String>) -> Self {
        Self::new(check, Status::Fail, reason)
    }

    pub fn error(check: &str, err: &Error) -> Self {
        Self::new(check, Status::Error, err.to_string())
    }

    /// Pass or fail depending on `ok`.
    pub fn verdict(check: &str, ok: bool, reason: impl Into<String>) -> Self {
        Self::new(check, if ok { Status::Pass } else { Status::Fail }, reason)
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.witness.insert(key.to_string(), v);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn timed(mut self, ms: u64) -> Self {
        self.timing_ms = Some(ms);
        self
    }

    /// JSON without the timing field, stable across runs.
    pub fn stable_json(&self) -> String {
        let mut c = self.clone();
        c.timing_ms = None;
        serde_json::to_string_pretty(&c).expect("certificate serializes")
    }
}

/// Runs a fallible check, turning errors into error certificates.
pub fn run<F>(check: &str, body: F) -> Certificate
where
    F: FnOnce() -> crate::Result<Certificate>,
{
    let start = std::time::Instant::now();
    let cert = body().unwrap_or_else(|e| Certificate::error(check, &e));
    cert.timed(start.elapsed().as_millis() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_with_sorted_witness() {
        let c = Certificate::pass("demo", "ok").with("z", "1/2").with("a", vec!["3"]);
        let s = c.stable_json();
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.contains("\"status\": \"pass\""));
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn errors_become_certificates() {
        let c = run("x", || Err(Error::Pole));
        assert_eq!(c.status, Status::Error);
        assert!(c.timing_ms.is_some());
    }
}
