//! The JSON report document written by every subcommand under `--json`.

use cbsemi::{BodySemigroup, BodySpec, Direction, Error, ErrorClass, LatticePoint, RaySide};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "cbsemi-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<BodySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived: Option<Derived>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            input: None,
            derived: None,
            result: None,
            error: None,
            timing_ms: None,
        }
    }
}

/// Rays, generators and contact kinds of the semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derived {
    pub tau1: Direction,
    pub tau2: Direction,
    pub n1: LatticePoint,
    pub n2: LatticePoint,
    pub contact1: String,
    pub contact2: String,
}

impl Derived {
    pub fn new(s: &BodySemigroup) -> Self {
        Self {
            tau1: s.tau(RaySide::Upper),
            tau2: s.tau(RaySide::Lower),
            n1: s.n1(),
            n2: s.n2(),
            contact1: s.contact(RaySide::Upper).kind().to_string(),
            contact2: s.contact(RaySide::Lower).kind().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub kind: String,
    pub message: String,
}

impl ErrorDoc {
    pub fn new(e: &Error) -> Self {
        let kind = match e.class() {
            ErrorClass::Input => "input",
            ErrorClass::Precondition => "precondition",
            ErrorClass::Inconclusive => "inconclusive",
        };
        Self {
            kind: kind.to_string(),
            message: e.to_string(),
        }
    }
}
