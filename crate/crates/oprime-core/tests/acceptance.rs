//! Acceptance suite: runs every bundled verification criterion at the
//! standard depths (12 for rank one, 6 for rank two) and prints one
//! pass/fail line per criterion. All checks are exact rational identities.

use std::time::Instant;

use oprime_core::verify::{run_criterion, VerifyOptions, CRITERIA};

#[test]
fn acceptance_criteria() {
    let opts = VerifyOptions::default();
    let start = Instant::now();
    let mut failures = Vec::new();
    for (id, _) in CRITERIA {
        let report = run_criterion(id, &opts).unwrap_or_else(|e| {
            panic!("criterion {id} aborted: {e}");
        });
        let status = if report.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {} — {} ({} ms)",
            report.id, status, report.name, report.millis
        );
        for line in &report.details {
            println!("              {line}");
        }
        if !report.passed {
            failures.push(report.id);
        }
    }
    println!("total acceptance time: {:?}", start.elapsed());
    assert!(failures.is_empty(), "criteria failed: {failures:?}");
    assert!(
        start.elapsed().as_secs() < 300,
        "acceptance suite exceeded the five-minute budget"
    );
}
