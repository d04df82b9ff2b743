//! The JSON report shared by every verification suite.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub id: String,
    pub identity: String,
    pub params: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_discrepancy: Option<Value>,
}

impl Instance {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub instances: Vec<Instance>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(suite: impl Into<String>, instances: Vec<Instance>) -> Self {
        let passed = instances.iter().filter(|i| i.passed()).count();
        let failed = instances.len() - passed;
        Self { suite: suite.into(), instances, passed, failed }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn first_failure(&self) -> Option<&Instance> {
        self.instances.iter().find(|i| !i.passed())
    }
}

/// Result of one check before it is wrapped into an [`Instance`].
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass(Option<String>),
    Fail { detail: String, first_discrepancy: Option<Value> },
}

impl Outcome {
    pub fn from_bool(ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Outcome::Pass(None)
        } else {
            Outcome::Fail { detail: detail.into(), first_discrepancy: None }
        }
    }

    pub fn into_instance(self, id: String, identity: &str, params: Value) -> Instance {
        let (status, detail, first_discrepancy) = match self {
            Outcome::Pass(d) => (Status::Pass, d, None),
            Outcome::Fail { detail, first_discrepancy } => (Status::Fail, Some(detail), first_discrepancy),
        };
        Instance { id, identity: identity.into(), params, status, detail, first_discrepancy }
    }
}

impl From<crate::Result<Outcome>> for Outcome {
    fn from(r: crate::Result<Outcome>) -> Self {
        r.unwrap_or_else(|e| Outcome::Fail { detail: format!("error: {e}"), first_discrepancy: None })
    }
}
