use std::fmt::Write as _;

use pdc_manifold::{ManifoldPresentation, PresentationFile};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped(_) => "SKIP",
        }
    }
}

/// Enough to rebuild the instance: the generator seed and index when it was
/// drawn at random, and the presentation itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationFile>,
    /// ψ vectors, λ sets, matrices.
    pub data: Value,
}

impl Witness {
    pub fn none() -> Self {
        Self { seed: None, index: None, presentation: None, data: Value::Null }
    }

    pub fn of(m: &ManifoldPresentation, instance: Option<Instance>, data: Value) -> Self {
        Self {
            seed: instance.map(|i| i.seed),
            index: instance.map(|i| i.index),
            presentation: Some(PresentationFile::from_presentation(m)),
            data,
        }
    }
}

/// Seed and position of a randomly drawn instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub seed: u64,
    pub index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub instance: String,
    pub expected: String,
    pub observed: String,
    pub witness: Witness,
    pub status: Status,
}

impl VerificationReport {
    pub fn new(
        theorem: impl Into<String>,
        instance: impl Into<String>,
        expected: impl Into<String>,
        observed: impl Into<String>,
        witness: Witness,
        status: Status,
    ) -> Self {
        Self {
            theorem: theorem.into(),
            instance: instance.into(),
            expected: expected.into(),
            observed: observed.into(),
            witness,
            status,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// One suite run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Wall-clock time; left out unless requested so that output stays
    /// reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, seed: Option<u64>, samples: Option<usize>, reports: Vec<VerificationReport>) -> Self {
        let count = |f: fn(&Status) -> bool| reports.iter().filter(|r| f(&r.status)).count();
        Self {
            suite: suite.into(),
            seed,
            samples,
            passed: count(|s| *s == Status::Pass),
            failed: count(|s| *s == Status::Fail),
            skipped: count(|s| matches!(s, Status::Skipped(_))),
            elapsed_ms: None,
            reports,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Fixed-width table, one row per report, failures followed by their witness.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let w_theorem = self.reports.iter().map(|r| r.theorem.chars().count()).max().unwrap_or(0).max(7);
        let w_instance = self.reports.iter().map(|r| r.instance.chars().count()).max().unwrap_or(0).max(8);
        let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
        let _ = writeln!(out, "{}  {}  status  observed", pad("theorem", w_theorem), pad("instance", w_instance));
        for r in &self.reports {
            let observed = match &r.status {
                Status::Skipped(reason) => reason.clone(),
                _ => r.observed.clone(),
            };
            let _ = writeln!(
                out,
                "{}  {}  {:<6}  {observed}",
                pad(&r.theorem, w_theorem),
                pad(&r.instance, w_instance),
                r.status.label()
            );
            if r.failed() {
                let _ = writeln!(out, "    expected: {}", r.expected);
                let _ = writeln!(out, "    witness: {}", serde_json::to_string(&r.witness).unwrap_or_default());
            }
        }
        let _ = write!(
            out,
            "suite {}: {} passed, {} failed, {} skipped",
            self.suite, self.passed, self.failed, self.skipped
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = write!(out, " ({ms} ms)");
        }
        out.push('\n');
        out
    }
}
