//! Check reports with a stable JSON surface:
//! `{"check", "status", "witness", "seed", "millis"}`, one object per
//! line in `--json` mode.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub witness: Option<String>,
    pub seed: Option<i64>,
    pub millis: u64,
}

impl Report {
    pub fn pass(check: &str, witness: impl Into<Option<String>>) -> Self {
        Report {
            check: check.to_string(),
            status: Status::Pass,
            witness: witness.into(),
            seed: None,
            millis: 0,
        }
    }

    pub fn fail(check: &str, witness: impl Into<Option<String>>) -> Self {
        Report {
            check: check.to_string(),
            status: Status::Fail,
            witness: witness.into(),
            seed: None,
            millis: 0,
        }
    }

    pub fn error(check: &str, message: String) -> Self {
        Report {
            check: check.to_string(),
            status: Status::Error,
            witness: Some(message),
            seed: None,
            millis: 0,
        }
    }

    pub fn with_seed(mut self, seed: i64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_millis(mut self, millis: u64) -> Self {
        self.millis = millis;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One JSON object, fields in fixed order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn to_human(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let mut line = format!("{:<28} {}", self.check, status);
        if let Some(w) = &self.witness {
            line.push_str(&format!("  {w}"));
        }
        if let Some(s) = self.seed {
            line.push_str(&format!("  (seed {s})"));
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = Report::pass("lemma1", Some("(q - 1)*(y11*y22 - y12*y21)".to_string()));
        assert_eq!(
            r.to_json(),
            r#"{"check":"lemma1","status":"pass","witness":"(q - 1)*(y11*y22 - y12*y21)","seed":null,"millis":0}"#
        );
        let r = Report::fail("iso", None).with_seed(42);
        assert_eq!(
            r.to_json(),
            r#"{"check":"iso","status":"fail","witness":null,"seed":42,"millis":0}"#
        );
    }

    #[test]
    fn round_trip() {
        let r = Report::error("parse", "syntax error at position 3".to_string());
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back.status, Status::Error);
        assert_eq!(back.check, "parse");
    }
}
