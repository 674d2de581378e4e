//! Structured pass/fail records.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One sub-check with its evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detail {
    pub name: String,
    pub status: Status,
    pub payload: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: Value,
    pub details: Vec<Detail>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, params: Value) -> Self {
        VerificationReport { check: check.into(), params, details: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, payload: Value) {
        self.details.push(Detail { name: name.into(), status: Status::from_bool(passed), payload });
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.details.push(Detail {
            name: name.into(),
            status: Status::Skipped,
            payload: serde_json::json!({ "reason": reason.into() }),
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.details.extend(other.details);
    }

    /// `Fail` if anything failed, `Skipped` if nothing ran, `Pass` otherwise.
    pub fn status(&self) -> Status {
        if self.details.iter().any(|d| d.status == Status::Fail) {
            Status::Fail
        } else if self.details.iter().any(|d| d.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Skipped
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Detail> {
        self.details.iter().filter(|d| d.status == Status::Fail)
    }
}

/// `"p/q"`, with the denominator always written.
pub fn rational_string(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}
