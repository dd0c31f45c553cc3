//! Structured outcome of a verification or search run.

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A bounded search finished without finding a witness.
    Exhausted,
}

impl Status {
    /// `Pass` and `Exhausted` are both successful outcomes.
    pub fn is_success(self) -> bool {
        !matches!(self, Status::Fail)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Exhausted => "exhausted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub parameters: Map<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub candidates_examined: u64,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn is_success(&self) -> bool {
        self.status.is_success()
    }

    /// The same report with its timing replaced, for comparing runs.
    pub fn with_elapsed(mut self, ms: u64) -> Self {
        self.elapsed_ms = ms;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} candidates, {} ms)",
            self.check, self.status, self.candidates_examined, self.elapsed_ms
        )?;
        if !self.parameters.is_empty() {
            write!(f, "\n  parameters: {}", Value::Object(self.parameters.clone()))?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

/// Accumulates a report while a check runs.
pub(crate) struct ReportBuilder {
    check: &'static str,
    parameters: Map<String, Value>,
    started: Instant,
}

impl ReportBuilder {
    pub(crate) fn new(check: &'static str) -> Self {
        ReportBuilder { check, parameters: Map::new(), started: Instant::now() }
    }

    pub(crate) fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub(crate) fn finish(self, status: Status, witness: Option<Value>, candidates: u64) -> VerificationReport {
        VerificationReport {
            check: self.check.to_string(),
            parameters: self.parameters,
            status,
            witness,
            candidates_examined: candidates,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }

    /// `Pass` when `failure` is `None`, otherwise `Fail` with the witness.
    pub(crate) fn verdict(self, failure: Option<Value>, candidates: u64) -> VerificationReport {
        let status = if failure.is_some() { Status::Fail } else { Status::Pass };
        self.finish(status, failure, candidates)
    }
}
