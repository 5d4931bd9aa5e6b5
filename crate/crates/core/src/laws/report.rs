use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawEntry {
    pub law: String,
    pub status: Status,
    /// Number of instances checked before the verdict.
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// For FAIL: the data needed to replay the violation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub entries: Vec<LawEntry>,
}

impl LawReport {
    pub fn new(suite: impl Into<String>) -> Self {
        LawReport {
            suite: suite.into(),
            entries: Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        if self.entries.iter().any(|e| e.status == Status::Fail) {
            Status::Fail
        } else if self.entries.iter().any(|e| e.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn entry(&self, law: &str) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.law == law)
    }

    pub fn extend(&mut self, other: LawReport) {
        self.entries.extend(other.entries);
    }

    /// Canonical order: by law id.
    pub fn sort(&mut self) {
        self.entries.sort_by(|a, b| a.law.cmp(&b.law));
    }

    pub fn strip_timing(&mut self) {
        for e in &mut self.entries {
            e.elapsed_ms = None;
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {}: {}\n", self.suite, self.status());
        for e in &self.entries {
            s.push_str(&format!("  {:<7} {} ({} checked)", e.status.to_string(), e.law, e.checked));
            if let Some(d) = &e.detail {
                s.push_str(&format!(": {d}"));
            }
            s.push('\n');
            if let Some(cx) = &e.counterexample {
                s.push_str(&format!("          counterexample: {cx}\n"));
            }
        }
        s
    }

    /// Runs one law, converting its outcome into an entry.
    pub fn run<F>(&mut self, law: impl Into<String>, body: F)
    where
        F: FnOnce(&mut Checker) -> Result<(), Stop>,
    {
        let start = Instant::now();
        let mut ck = Checker { checked: 0 };
        let outcome = body(&mut ck);
        let mut entry = LawEntry {
            law: law.into(),
            status: Status::Pass,
            checked: ck.checked,
            detail: None,
            counterexample: None,
            elapsed_ms: Some(start.elapsed().as_millis() as u64),
        };
        match outcome {
            Ok(()) => {}
            Err(Stop::Fail { detail, counterexample }) => {
                entry.status = Status::Fail;
                entry.detail = Some(detail);
                entry.counterexample = Some(counterexample);
            }
            Err(Stop::Error(e)) => match e {
                Error::SearchBudgetExceeded { .. } | Error::MissingCapability(_) => {
                    entry.status = Status::Skipped;
                    entry.detail = Some(e.to_string());
                }
                other => {
                    entry.status = Status::Fail;
                    entry.detail = Some(other.to_string());
                }
            },
        }
        self.entries.push(entry);
    }

    pub fn skip(&mut self, law: impl Into<String>, reason: impl Into<String>) {
        self.entries.push(LawEntry {
            law: law.into(),
            status: Status::Skipped,
            checked: 0,
            detail: Some(reason.into()),
            counterexample: None,
            elapsed_ms: None,
        });
    }
}

/// Early exit from a law body: a found violation or an operational error.
#[derive(Debug)]
pub enum Stop {
    Fail { detail: String, counterexample: Value },
    Error(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Error(e)
    }
}

pub struct Checker {
    checked: u64,
}

impl Checker {
    /// Counts one instance; on `false` stops with the lazily built
    /// counterexample.
    pub fn check(&mut self, ok: bool, cx: impl FnOnce() -> (String, Value)) -> Result<(), Stop> {
        self.checked += 1;
        if ok {
            Ok(())
        } else {
            let (detail, counterexample) = cx();
            Err(Stop::Fail { detail, counterexample })
        }
    }

    pub fn checked(&self) -> u64 {
        self.checked
    }
}
