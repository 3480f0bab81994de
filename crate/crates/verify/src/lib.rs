//! Pass/fail bookkeeping for the acceptance run.

use std::fmt;
use std::time::{Duration, Instant};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub details: Vec<String>,
    pub elapsed: Duration,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {} {verdict} {} ({:.1}s)", self.id, self.title, self.elapsed.as_secs_f64())?;
        for d in &self.details {
            write!(f, "\n    {d}")?;
        }
        Ok(())
    }
}

/// Collects notes and the outcome of each assertion inside one criterion.
pub struct Recorder {
    id: u32,
    title: String,
    passed: bool,
    details: Vec<String>,
    started: Instant,
}

impl Recorder {
    pub fn new(id: u32, title: &str) -> Self {
        Self {
            id,
            title: title.to_owned(),
            passed: true,
            details: Vec::new(),
            started: Instant::now(),
        }
    }

    /// Records a condition; a false one fails the criterion.
    pub fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.details.push(format!("[{}] {what}", if ok { "ok" } else { "failed" }));
        self.passed &= ok;
    }

    /// Records information that does not affect the verdict.
    pub fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("[info] {}", what.into()));
    }

    pub fn finish(self) -> Check {
        Check {
            id: self.id,
            title: self.title,
            passed: self.passed,
            details: self.details,
            elapsed: self.started.elapsed(),
        }
    }
}

/// `|a - b| <= tol * max(|a|, |b|)`.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}
