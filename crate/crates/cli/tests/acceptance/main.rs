//! Acceptance suite. Every criterion is checked with exact rational
//! arithmetic and prints one PASS or FAIL line; the process exits nonzero
//! when any criterion fails.

#[path = "../../../core/tests/common/mod.rs"]
mod common;
#[path = "../support/mod.rs"]
mod support;

mod cli;
mod lattice;
mod tensors;

use std::fmt::Debug;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

/// Failures collected while checking one criterion.
#[derive(Default)]
pub struct Report {
    failures: Vec<String>,
    checks: u64,
}

impl Report {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn eq<T: PartialEq + Debug>(&mut self, got: T, want: T, what: impl FnOnce() -> String) {
        self.checks += 1;
        if got != want {
            self.failures.push(format!("{}: got {got:?}, want {want:?}", what()));
        }
    }
}

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Duration,
    run: fn(&mut Report),
}

const SHOWN_FAILURES: usize = 3;

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, title: "relation suite", budget: Duration::from_secs(1), run: algebra::relations },
        Criterion { number: 2, title: "action-oracle equivalence", budget: Duration::from_secs(10), run: algebra::action_oracle },
        Criterion { number: 3, title: "theta suite", budget: Duration::from_secs(5), run: algebra::theta },
        Criterion { number: 4, title: "unit suite", budget: Duration::from_secs(10), run: units::units },
        Criterion { number: 5, title: "lattice suite", budget: Duration::from_secs(30), run: lattice::lattice },
        Criterion { number: 6, title: "generated-ideal suite", budget: Duration::from_secs(10), run: tensors::generated_ideals },
        Criterion { number: 7, title: "minimal-unit suite", budget: Duration::from_secs(10), run: tensors::minimal_units },
        Criterion { number: 8, title: "cli golden files and round trip", budget: Duration::from_secs(30), run: cli::cli },
    ];
    // JAC_ACCEPTANCE_VERBOSE lists every failure
    let verbose = std::env::var_os("JAC_ACCEPTANCE_VERBOSE").is_some();
    let mut all_pass = true;
    for c in &criteria {
        let mut report = Report::default();
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(&mut report)));
        let elapsed = start.elapsed();
        if let Err(p) = outcome {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            report.failures.push(format!("panicked: {msg}"));
        }
        if elapsed > c.budget {
            report.failures.push(format!(
                "took {:.2} s, over the {} s budget",
                elapsed.as_secs_f64(),
                c.budget.as_secs()
            ));
        }
        let pass = report.failures.is_empty();
        all_pass &= pass;
        println!(
            "criterion {} {}: {} ({} checks, {:.2} s)",
            c.number,
            c.title,
            if pass { "PASS" } else { "FAIL" },
            report.checks,
            elapsed.as_secs_f64()
        );
        let shown = if verbose { usize::MAX } else { SHOWN_FAILURES };
        for f in report.failures.iter().take(shown) {
            println!("    {f}");
        }
        if report.failures.len() > shown {
            println!("    ... {} more", report.failures.len() - shown);
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
