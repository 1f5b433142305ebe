//! Structured results shared by scans, experiments and the command line.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::lattice::Coords;

/// A lattice triple `(j, k, ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub j: Vec<i64>,
    pub k: Vec<i64>,
    pub l: Vec<i64>,
}

impl Triple {
    pub fn new(j: &[i64], k: &[i64], l: &[i64]) -> Self {
        Triple {
            j: j.to_vec(),
            k: k.to_vec(),
            l: l.to_vec(),
        }
    }

    pub fn from_coords(j: &Coords, k: &Coords, l: &Coords) -> Self {
        Self::new(j, k, l)
    }

    /// `max(|j|_∞, |k|_∞, |ℓ|_∞)`.
    pub fn sup_norm(&self) -> i64 {
        self.j
            .iter()
            .chain(&self.k)
            .chain(&self.l)
            .map(|v| v.abs())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// A plain computation with no pass/fail semantics.
    Computed,
    Pass,
    Fail,
    ConsistentWithMembership,
    Violation,
    Inconclusive,
    HypothesisUnmet,
}

impl Verdict {
    /// Process exit code for the verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Fail | Verdict::Violation => 1,
            _ => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Computed => "computed",
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ConsistentWithMembership => "consistent-with-membership",
            Verdict::Violation => "violation",
            Verdict::Inconclusive => "inconclusive",
            Verdict::HypothesisUnmet => "hypothesis-unmet",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub params: Value,
    pub value: Option<f64>,
    pub argmax: Option<Triple>,
    pub radius: Option<i64>,
    #[serde(rename = "boundaryRatio")]
    pub boundary_ratio: Option<f64>,
    pub verdict: Verdict,
    pub witness: Option<Value>,
    /// Certificates, per-item tables and curves.
    #[serde(default)]
    pub details: Value,
}

impl Report {
    pub fn new(kind: impl Into<String>, params: Value, verdict: Verdict) -> Self {
        Report {
            kind: kind.into(),
            params,
            value: None,
            argmax: None,
            radius: None,
            boundary_ratio: None,
            verdict,
            witness: None,
            details: Value::Null,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let mut s = format!("{}: {}", self.kind, self.verdict.as_str());
        if let Some(v) = self.value {
            s.push_str(&format!(", value = {v:.6e}"));
        }
        if let Some(r) = self.radius {
            s.push_str(&format!(", radius = {r}"));
        }
        if let Some(a) = &self.argmax {
            s.push_str(&format!(", argmax = (j={:?}, k={:?}, l={:?})", a.j, a.k, a.l));
        }
        s
    }
}
