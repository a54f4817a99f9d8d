//! Structured results of verification checks.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Degenerate,
    Skip,
}

impl Status {
    /// `PASS` for true, `FAIL` for false.
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Whether this status lets a run exit successfully.
    pub fn is_ok(self) -> bool {
        self != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub check_id: String,
    pub status: Status,
    pub field_desc: String,
    pub seed: u64,
    pub payload: Value,
    pub timing_ms: u64,
}

impl CheckReport {
    pub fn new(check_id: &str, status: Status, field_desc: impl Into<String>, seed: u64, payload: Value) -> Self {
        CheckReport {
            schema: SCHEMA_VERSION,
            check_id: check_id.to_string(),
            status,
            field_desc: field_desc.into(),
            seed,
            payload,
            timing_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Runs `f`, recording its wall-clock time in the report.
    pub fn timed(f: impl FnOnce() -> CheckReport) -> CheckReport {
        let start = Instant::now();
        let mut report = f();
        report.timing_ms = start.elapsed().as_millis() as u64;
        report
    }

    /// The report without its timing, for determinism comparisons.
    pub fn without_timing(&self) -> CheckReport {
        CheckReport { timing_ms: 0, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn serialized_layout() {
        let r = CheckReport::new("koszul", Status::Pass, "q", 7, json!({"dim": 3315}));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["status"], "PASS");
        assert_eq!(v["field_desc"], "q");
        assert_eq!(v["payload"]["dim"], 3315);
    }

    #[test]
    fn degenerate_is_not_a_failure() {
        assert!(Status::Degenerate.is_ok());
        assert!(Status::Skip.is_ok());
        assert!(!Status::Fail.is_ok());
    }
}
