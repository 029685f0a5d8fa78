//! End-to-end verification gate: runs the full default-size randomized
//! suite once and requires every criterion to pass inside its time budget.

use std::time::{Duration, Instant};
use trig_darboux::suite::{run_suite, RunConfig, Status};

/// Per-criterion wall-clock budgets, in seconds, in report order. The
/// first two criteria share one budget (the eigen check reuses the
/// factorization corpus); unbudgeted criteria only count toward the
/// whole-suite limit.
const BUDGETS: [Option<u64>; 10] = [
    Some(60), // factorization (shared with the next)
    Some(60), // differential eigen-equation
    Some(60), // difference counterpart
    Some(60), // orthogonality
    Some(120), // matrix-pair round trip
    None,     // sato consistency
    None,     // involution
    None,     // classifier soundness
    None,     // discrete shift property
    None,     // normalization
];

const SUITE_BUDGET: Duration = Duration::from_secs(300);

#[test]
fn full_suite_passes_within_budget() {
    let start = Instant::now();
    let report = run_suite(&RunConfig::default()).expect("suite must run to completion");
    let total = start.elapsed();

    assert_eq!(report.records.len(), BUDGETS.len());
    let mut all_ok = true;
    // criteria 1 and 2 share a budget: their times are summed
    let shared = report.records[0].elapsed + report.records[1].elapsed;
    for (i, (rec, budget)) in report.records.iter().zip(BUDGETS).enumerate() {
        let elapsed = if i < 2 { shared } else { rec.elapsed };
        let in_budget = budget
            .map(|b| elapsed <= Duration::from_secs(b))
            .unwrap_or(true);
        let ok = rec.status == Status::Pass && in_budget;
        println!(
            "criterion {:>2} {:<24} {} ({:.2?}{})",
            i + 1,
            rec.name,
            if ok { "pass" } else { "FAIL" },
            rec.elapsed,
            match budget {
                Some(b) if !in_budget => format!(", over the {b} s budget"),
                _ => String::new(),
            }
        );
        if !ok {
            if let Some(w) = &rec.witness {
                println!("  witness: {w}");
            }
            all_ok = false;
        }
    }
    println!("suite total: {total:.2?}");
    assert!(all_ok, "at least one criterion failed or ran over budget");
    assert!(
        total <= SUITE_BUDGET,
        "suite took {total:?}, budget is {SUITE_BUDGET:?}"
    );
}
