//! Verdict records for theorem checks.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::io::to_graph6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Hypotheses hold and the conclusion was certified.
    Confirmed,
    /// Hypotheses do not hold; the conclusion was not evaluated.
    HypothesisUnmet,
    /// The instance exceeds a cap or the time budget.
    Skipped,
    /// Open-problem search: nothing falsifying on this instance.
    NoneFalsifying,
    /// The conclusion fails and an independent exact check agrees.
    CounterexampleCandidate,
    /// The constructive path failed but the exact check says the conclusion
    /// holds.
    AlgorithmBugCandidate,
    /// The check itself errored.
    Error,
}

impl Status {
    pub fn is_failure(self) -> bool {
        matches!(self, Status::CounterexampleCandidate | Status::AlgorithmBugCandidate | Status::Error)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub theorem: String,
    /// graph6 of the instance, enough to rerun the check.
    pub instance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance_ref: Option<String>,
    pub hypothesis: Check,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<Check>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<i64>,
    pub elapsed_us: u64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl VerdictReport {
    pub fn start(theorem: &str, g: &Graph) -> Self {
        VerdictReport {
            theorem: theorem.to_string(),
            instance: to_graph6(g),
            instance_ref: None,
            hypothesis: Check { passed: false, detail: String::new() },
            conclusion: None,
            status: Status::HypothesisUnmet,
            witness: None,
            margin: None,
            elapsed_us: 0,
            started: Some(Instant::now()),
        }
    }

    fn stop(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.elapsed_us = t.elapsed().as_micros() as u64;
        }
        self
    }

    pub fn hypothesis_holds(&mut self, detail: impl Into<String>) {
        self.hypothesis = Check { passed: true, detail: detail.into() };
    }

    pub fn unmet(mut self, detail: impl Into<String>) -> Self {
        self.hypothesis = Check { passed: false, detail: detail.into() };
        self.status = Status::HypothesisUnmet;
        self.stop()
    }

    pub fn skipped(mut self, detail: impl Into<String>) -> Self {
        self.hypothesis.detail = detail.into();
        self.status = Status::Skipped;
        self.stop()
    }

    pub fn errored(mut self, detail: impl Into<String>) -> Self {
        self.conclusion = Some(Check { passed: false, detail: detail.into() });
        self.status = Status::Error;
        self.stop()
    }

    /// Records the conclusion; only meaningful once the hypothesis holds.
    pub fn conclude(mut self, passed: bool, detail: impl Into<String>, fail_status: Status) -> Self {
        debug_assert!(self.hypothesis.passed);
        self.conclusion = Some(Check { passed, detail: detail.into() });
        self.status = if passed { Status::Confirmed } else { fail_status };
        self.stop()
    }

    pub fn with_witness(mut self, w: serde_json::Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_margin(mut self, m: i64) -> Self {
        self.margin = Some(m);
        self
    }

    /// Copy with timing cleared, for comparing runs.
    pub fn without_timing(&self) -> Self {
        VerdictReport { elapsed_us: 0, started: None, ..self.clone() }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
