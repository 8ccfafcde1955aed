//! Machine-readable run reports shared by the CLI and the verifiers.

use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One verification or analysis step with its witness data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: CheckStatus,
    /// Arbitrary JSON describing what was computed (counts, witnesses, …).
    pub witness: serde_json::Value,
    /// Omitted in `--stable` mode so reports are byte-comparable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    /// Run a closure producing (pass, witness) and wrap it with timing.
    pub fn run<F>(id: impl Into<String>, f: F) -> CheckResult
    where
        F: FnOnce() -> (bool, serde_json::Value),
    {
        let start = Instant::now();
        let (ok, witness) = f();
        CheckResult {
            id: id.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            witness,
            elapsed_ms: Some(start.elapsed().as_millis() as u64),
        }
    }

    pub fn strip_timing(&mut self) {
        self.elapsed_ms = None;
    }
}

/// Top-level report for one CLI invocation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(command: impl Into<String>, checks: Vec<CheckResult>) -> RunReport {
        let pass = checks.iter().all(|c| c.passed());
        RunReport {
            command: command.into(),
            checks,
            pass,
        }
    }

    pub fn strip_timing(&mut self) {
        for c in &mut self.checks {
            c.strip_timing();
        }
    }
}
