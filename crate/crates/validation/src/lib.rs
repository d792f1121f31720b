//! Reporting plumbing for the acceptance suite: each criterion runs in
//! isolation, prints exactly one `PASS`/`FAIL` line, and a panic inside a
//! criterion counts as a failure instead of aborting the run.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

/// Verdict and a one-line explanation of what was measured.
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Default)]
pub struct Suite {
    passed: usize,
    failed: Vec<u32>,
}

impl Suite {
    pub fn run(&mut self, id: u32, name: &str, criterion: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {msg}"))
        });
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {verdict} {name}: {} [{:.2}s]",
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        if outcome.pass {
            self.passed += 1;
        } else {
            self.failed.push(id);
        }
    }

    /// Prints the summary line; `true` when every criterion passed.
    pub fn finish(&self) -> bool {
        println!(
            "acceptance: {} passed, {} failed{}",
            self.passed,
            self.failed.len(),
            if self.failed.is_empty() {
                String::new()
            } else {
                format!(" {:?}", self.failed)
            }
        );
        self.failed.is_empty()
    }
}
