//! Check records shared by every suite.

use std::fmt::Display;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A discrepancy with a printed value that the suite reports without failing.
    Flagged,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAG",
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// A value printed in the reference text.
    Reference,
    /// Computed independently from first principles.
    Derived,
    /// Immediate from the definitions.
    Trivial,
    /// Random-trial evidence, not a proof.
    Heuristic,
    /// Plumbing with no outside source.
    Invented,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub provenance: Provenance,
    pub paper_ref: String,
}

impl Check {
    pub fn equal<T: PartialEq + Display>(
        name: &str,
        expected: &T,
        actual: &T,
        provenance: Provenance,
        anchor: &str,
    ) -> Check {
        Check::predicate(
            name,
            expected.to_string(),
            actual.to_string(),
            expected == actual,
            provenance,
            anchor,
        )
    }

    pub fn predicate(
        name: &str,
        expected: impl Into<String>,
        actual: impl Into<String>,
        ok: bool,
        provenance: Provenance,
        anchor: &str,
    ) -> Check {
        Check {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.into(),
            actual: actual.into(),
            provenance,
            paper_ref: anchor.to_string(),
        }
    }

    pub fn flagged(
        name: &str,
        expected: impl Into<String>,
        actual: impl Into<String>,
        provenance: Provenance,
        anchor: &str,
    ) -> Check {
        Check {
            name: name.to_string(),
            status: Status::Flagged,
            expected: expected.into(),
            actual: actual.into(),
            provenance,
            paper_ref: anchor.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}
