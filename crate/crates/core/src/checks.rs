//! Named pass/fail records shared by every checker.

use serde::Serialize;
use serde_json::Value as Json;

use crate::ring::{Elem, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Verified over the whole (finite) ring.
    Pass,
    /// Verified over a finite window of an infinite ring.
    PassOnWindow,
    Fail,
}

impl Status {
    pub fn passed(exhaustive: bool) -> Status {
        if exhaustive {
            Status::Pass
        } else {
            Status::PassOnWindow
        }
    }

    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::PassOnWindow => "pass-on-window",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Present exactly when the check failed.
    pub witness: Option<Vec<Elem>>,
    pub rendered: Option<Vec<String>>,
}

impl Check {
    pub fn from_witness(
        name: &str,
        ring: &Ring,
        exhaustive: bool,
        witness: Option<Vec<Elem>>,
    ) -> Check {
        let rendered = witness
            .as_ref()
            .map(|w| w.iter().map(|e| ring.render(e)).collect());
        Check {
            name: name.to_string(),
            status: if witness.is_some() {
                Status::Fail
            } else {
                Status::passed(exhaustive)
            },
            witness,
            rendered,
        }
    }

    /// A check whose failure has no element witness.
    pub fn flag(name: &str, exhaustive: bool, ok: bool, note: Option<String>) -> Check {
        Check {
            name: name.to_string(),
            status: if ok { Status::passed(exhaustive) } else { Status::Fail },
            witness: None,
            rendered: if ok { None } else { Some(note.into_iter().collect()) },
        }
    }

    pub fn passed(&self) -> bool {
        !self.status.is_fail()
    }

    pub fn to_json(&self) -> Json {
        let mut obj = serde_json::json!({
            "name": self.name,
            "status": self.status.as_str(),
        });
        if let Some(w) = &self.rendered {
            obj["witness"] = Json::from(w.clone());
        }
        obj
    }
}

/// An ordered list of named checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Json {
        Json::Array(self.checks.iter().map(Check::to_json).collect())
    }
}
