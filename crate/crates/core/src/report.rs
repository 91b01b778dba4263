//! Machine-readable outcomes of property checks.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// How a status was reached. A PASS over an infinite group is never more
/// than `Sampled` or `Witnessed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Evidence {
    /// verified on the reported number of random samples
    Sampled,
    /// established by an explicit construction or counterexample
    Witnessed,
    /// checked on every element of a finite set
    Exhaustive,
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub status: Status,
    pub witness: Option<Value>,
    pub samples: usize,
    pub seed: Option<u64>,
    pub evidence: Evidence,
    pub message: String,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, params: Value) -> CheckReport {
        CheckReport {
            check: check.into(),
            params,
            status: Status::Inconclusive,
            witness: None,
            samples: 0,
            seed: None,
            evidence: Evidence::None,
            message: String::new(),
        }
    }

    pub fn pass(mut self, evidence: Evidence, message: impl Into<String>) -> CheckReport {
        self.status = Status::Pass;
        self.evidence = evidence;
        self.message = message.into();
        self
    }

    pub fn fail(mut self, witness: Value, message: impl Into<String>) -> CheckReport {
        self.status = Status::Fail;
        self.evidence = Evidence::Witnessed;
        self.witness = Some(witness);
        self.message = message.into();
        self
    }

    pub fn inconclusive(mut self, message: impl Into<String>) -> CheckReport {
        self.status = Status::Inconclusive;
        self.message = message.into();
        self
    }

    pub fn with_samples(mut self, samples: usize) -> CheckReport {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> CheckReport {
        self.seed = Some(seed);
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<12} {} {}", self.status.to_string(), self.check, self.params)?;
        if !self.message.is_empty() {
            write!(f, " : {}", self.message)?;
        }
        Ok(())
    }
}

/// Folds a list of statuses: any FAIL wins, then any INCONCLUSIVE.
pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
    let mut out = Status::Pass;
    for s in statuses {
        match s {
            Status::Fail => return Status::Fail,
            Status::Inconclusive => out = Status::Inconclusive,
            Status::Pass => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn report_json_shape() {
        let r = CheckReport::new("P1", json!({"i": 1})).with_seed(7).with_samples(3).pass(Evidence::Sampled, "");
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "PASS");
        assert_eq!(v["samples"], 3);
        assert_eq!(v["seed"], 7);
        assert_eq!(v["evidence"], "sampled");
        let back: CheckReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn combining() {
        assert_eq!(combine([Status::Pass, Status::Inconclusive]), Status::Inconclusive);
        assert_eq!(combine([Status::Inconclusive, Status::Fail]), Status::Fail);
        assert_eq!(combine([]), Status::Pass);
    }
}
