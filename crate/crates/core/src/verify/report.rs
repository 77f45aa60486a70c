use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
        })
    }
}

/// Outcome of checking one claim on one instance. A failing report carries
/// the first violation found as its witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub stats: BTreeMap<String, Value>,
}

impl VerificationReport {
    pub fn new(claim: &str, instance: impl Into<String>) -> VerificationReport {
        VerificationReport {
            claim: claim.to_string(),
            instance: instance.into(),
            status: Status::Pass,
            witness: None,
            reason: None,
            stats: BTreeMap::new(),
        }
    }

    pub fn inapplicable(claim: &str, instance: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut r = VerificationReport::new(claim, instance);
        r.status = Status::Inapplicable;
        r.reason = Some(reason.into());
        r
    }

    /// Records a violation; only the first one becomes the witness.
    pub fn fail(&mut self, witness: Value) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.witness = Some(witness);
        }
        let n = self.stats.get("violations").and_then(Value::as_u64).unwrap_or(0);
        self.stats.insert("violations".into(), Value::from(n + 1));
    }

    pub fn stat(&mut self, key: &str, value: impl Into<Value>) {
        self.stats.insert(key.to_string(), value.into());
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.claim, self.instance, self.status)?;
        if let Some(r) = &self.reason {
            write!(f, " ({r})")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness {w}")?;
        }
        Ok(())
    }
}
