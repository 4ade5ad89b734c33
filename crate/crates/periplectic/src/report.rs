//! Machine-readable outcomes of verification runs.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Overflow,
}

/// Result of one named check. A non-passing report always carries at least
/// one witness.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    /// Number of individual identities evaluated.
    pub checked: usize,
    pub witnesses: Vec<String>,
    pub wall_time_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Turns a check that is meant to fail into a report named `name` that
    /// passes exactly when the original failed with a witness. The caught
    /// witness moves into the parameters.
    pub fn expect_failure(self, name: impl Into<String>) -> CheckReport {
        let caught = self.status == Status::Fail && !self.witnesses.is_empty();
        let mut params = self.params;
        params.insert("mutated_check".into(), Value::from(self.name));
        let witnesses = if caught {
            params.insert("caught".into(), Value::from(self.witnesses[0].clone()));
            Vec::new()
        } else {
            vec![format!("mutation went undetected ({} identities held)", self.checked)]
        };
        CheckReport {
            name: name.into(),
            params,
            status: if caught { Status::Pass } else { Status::Fail },
            checked: self.checked,
            witnesses,
            wall_time_ms: self.wall_time_ms,
        }
    }
}

/// Collects the sub-identities of one check.
pub struct Recorder {
    name: String,
    params: BTreeMap<String, Value>,
    start: Instant,
    checked: usize,
    witnesses: Vec<String>,
    overflow: bool,
}

/// Failing checks keep at most this many witnesses.
const MAX_WITNESSES: usize = 8;

impl Recorder {
    pub fn new(name: impl Into<String>) -> Self {
        Recorder {
            name: name.into(),
            params: BTreeMap::new(),
            start: Instant::now(),
            checked: 0,
            witnesses: Vec::new(),
            overflow: false,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Records one identity; `witness` is evaluated only on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.push(witness());
        }
        ok
    }

    /// Records an identity whose failure is described by `Some(witness)`.
    pub fn check_opt(&mut self, label: impl Display, witness: Option<String>) -> bool {
        self.check(witness.is_none(), || {
            format!("{label}: {}", witness.unwrap_or_default())
        })
    }

    /// Records the outcome of a fallible computation.
    pub fn check_result(&mut self, label: impl Display, r: Result<Option<String>>) -> bool {
        match r {
            Ok(w) => self.check_opt(label, w),
            Err(e) => {
                self.error(label, e);
                false
            }
        }
    }

    pub fn error(&mut self, label: impl Display, e: Error) {
        self.checked += 1;
        if matches!(e, Error::TruncationOverflow { .. } | Error::StepBound(_)) {
            self.overflow = true;
        }
        self.push(format!("{label}: {e}"));
    }

    fn push(&mut self, w: String) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    pub fn is_passing(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn finish(self) -> CheckReport {
        let status = if self.witnesses.is_empty() {
            Status::Pass
        } else if self.overflow {
            Status::Overflow
        } else {
            Status::Fail
        };
        CheckReport {
            name: self.name,
            params: self.params,
            status,
            checked: self.checked,
            witnesses: self.witnesses,
            wall_time_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Top-level document: reports sorted by name under a schema version.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ReportSet {
    pub schema: u32,
    pub reports: Vec<CheckReport>,
}

impl ReportSet {
    pub fn new(mut reports: Vec<CheckReport>) -> Self {
        reports.sort_by(|a, b| a.name.cmp(&b.name));
        ReportSet {
            schema: SCHEMA_VERSION,
            reports,
        }
    }

    /// 0 when everything passed, 1 on any failure, else 3 for overflow.
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(|r| r.status == Status::Fail) {
            1
        } else if self.reports.iter().any(|r| r.status == Status::Overflow) {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Parses and validates a document: known schema, sorted names,
    /// witnesses present exactly on non-passing reports.
    pub fn from_json(s: &str) -> Result<Self> {
        let set: ReportSet = serde_json::from_str(s).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: msg.to_string(),
        };
        if set.schema != SCHEMA_VERSION {
            return Err(bad("unsupported schema version"));
        }
        if set.reports.windows(2).any(|w| w[0].name > w[1].name) {
            return Err(bad("reports not sorted by name"));
        }
        for r in &set.reports {
            if r.passed() != r.witnesses.is_empty() {
                return Err(bad("witnesses must accompany exactly the failing reports"));
            }
        }
        Ok(set)
    }
}
