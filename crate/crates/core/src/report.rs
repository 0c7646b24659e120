//! Machine-readable reports: one entry per named check.

use serde::Serialize;
use serde_json::Value;

use crate::module::Certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub status: Status,
    pub detail: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificate: Vec<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        Report { command: command.into(), seed, checks: Vec::new() }
    }

    pub fn push(&mut self, check: &str, ok: bool, detail: Value) -> &mut Check {
        self.checks.push(Check {
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
            certificate: Vec::new(),
        });
        self.checks.last_mut().expect("just pushed")
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn get(&self, check: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check == check)
    }

    /// JSON with checks sorted by name.
    pub fn to_json(&self) -> Value {
        let mut sorted = self.clone();
        sorted.checks.sort_by(|a, b| a.check.cmp(&b.check));
        serde_json::to_value(sorted).expect("report serializes")
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let detail = match &c.detail {
                Value::String(s) => s.clone(),
                Value::Object(o) => o.get("summary").and_then(Value::as_str).map(str::to_owned).unwrap_or_else(|| c.detail.to_string()),
                other => other.to_string(),
            };
            out.push_str(&format!("{tag} {}: {detail}\n", c.check));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn sorted_by_name() {
        let mut r = Report::new("x", Some(1));
        r.push("b", true, json!("ok"));
        r.push("a", false, json!({"summary": "bad", "n": 2}));
        assert!(!r.all_pass());
        let j = r.to_json();
        assert_eq!(j["checks"][0]["check"], "a");
        assert_eq!(j["checks"][0]["status"], "fail");
        assert_eq!(r.summary(), "PASS b: ok\nFAIL a: bad\n");
    }
}
