//! Machine-readable verification reports. Every suite produces a `Report`
//! holding one `Check` per verified identity; the CLI serializes these as
//! JSON and derives its exit code from the summary.

use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// Exact equality established.
    Pass,
    /// Equality established at every sampled point, not interpolated.
    PassProbabilistic,
    Fail,
    Skipped,
}

impl Status {
    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }
}

/// One verified identity. `claim` is a self-contained statement of what was
/// checked; on failure `lhs`/`rhs` hold renderings that reproduce the
/// counterexample.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub elapsed_ms: u128,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        claim: impl Into<String>,
        status: Status,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        Check {
            id: id.into(),
            claim: claim.into(),
            status,
            lhs: lhs.into(),
            rhs: rhs.into(),
            elapsed_ms: 0,
        }
    }

    /// Pass/fail from a boolean equality outcome.
    pub fn equality(
        id: impl Into<String>,
        claim: impl Into<String>,
        equal: bool,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        let status = if equal { Status::Pass } else { Status::Fail };
        Check::new(id, claim, status, lhs, rhs)
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub pass_probabilistic: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: serde_json::Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: impl Into<String>, params: serde_json::Value) -> Self {
        Report { suite: suite.into(), params, checks: Vec::new(), summary: Summary::default() }
    }

    pub fn push(&mut self, check: Check) {
        match check.status {
            Status::Pass => self.summary.pass += 1,
            Status::PassProbabilistic => self.summary.pass_probabilistic += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Skipped => self.summary.skipped += 1,
        }
        self.checks.push(check);
    }

    /// Runs `f`, records wall time on the produced check, and pushes it.
    pub fn timed(&mut self, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let mut check = f();
        check.elapsed_ms = start.elapsed().as_millis();
        self.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        for check in other.checks {
            self.push(check);
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    /// Stable order for serialization: checks sorted by id. Ids are chosen
    /// unique per suite; ties keep insertion order (stable sort).
    pub fn sorted(mut self) -> Report {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Canonical rendering for determinism comparisons: timings zeroed,
    /// checks sorted. Two runs with the same config and seed must agree on
    /// these bytes exactly.
    pub fn canonical_json(&self) -> String {
        let mut canon = self.clone().sorted();
        for check in canon.checks.iter_mut() {
            check.elapsed_ms = 0;
        }
        serde_json::to_string_pretty(&canon).expect("report serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", serde_json::json!({"weights": [2, 3]}));
        r.push(Check::equality("b-second", "one equals one", true, "1", "1"));
        r.push(Check::new("a-first", "skipped thing", Status::Skipped, "", ""));
        r
    }

    #[test]
    fn summary_counts() {
        let mut r = sample();
        r.push(Check::equality("c", "one equals two", false, "1", "2"));
        assert_eq!(r.summary.pass, 1);
        assert_eq!(r.summary.skipped, 1);
        assert_eq!(r.summary.fail, 1);
        assert!(r.has_failures());
    }

    #[test]
    fn canonical_is_deterministic_and_sorted() {
        let mut a = sample();
        a.checks[0].elapsed_ms = 5; // timing noise must not show up
        let b = sample();
        assert_eq!(a.canonical_json(), b.canonical_json());
        let canon: Report = serde_json::from_str(&a.canonical_json()).unwrap();
        assert_eq!(canon.checks[0].id, "a-first");
        assert_eq!(canon.checks[0].elapsed_ms, 0);
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let parsed: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(parsed.suite, "demo");
        assert_eq!(parsed.checks.len(), 2);
        assert_eq!(parsed.summary, r.summary);
    }
}
