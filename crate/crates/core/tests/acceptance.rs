//! Acceptance sweeps: one line per criterion, nonzero exit on any failure.
//!
//! Each sweep runs at its default range. Expected item counts are fixed by
//! the index ranges, so a sweep that silently shrinks fails here too.

use std::process::ExitCode;
use std::time::Instant;

use schurpos::partition::{partitions_of, PartitionFilter};
use schurpos::verify::{Criterion, Params};

fn count(n_max: usize, filter: PartitionFilter) -> usize {
    (1..=n_max).map(|n| partitions_of(n, filter).len()).sum()
}

/// Item counts determined by the index ranges alone.
fn expected_items(c: Criterion) -> Option<usize> {
    let bounded = |k: usize, d: usize| count(d, PartitionFilter::bounded(k));
    Some(match c {
        // k = |λ| and k = |λ| + 1 for every λ with 1 ≤ |λ| ≤ 6
        Criterion::Degeneration => 2 * count(6, PartitionFilter::default()),
        Criterion::BranchPos | Criterion::KSchurPos => bounded(1, 8) + bounded(2, 8) + bounded(3, 7),
        Criterion::PPos => count(8, PartitionFilter::strict()),
        Criterion::Integrality => 10,
        Criterion::Coeff => 5,
        Criterion::Fractional => 6,
        Criterion::Primitive => 8,
        Criterion::Omega => bounded(1, 7) + bounded(2, 7) + bounded(3, 7),
        _ => return None,
    })
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in Criterion::ALL {
        let start = Instant::now();
        let report = c.run(&Params::default());
        let elapsed = start.elapsed();
        let limit = c.runtime_limit();
        let count_ok = expected_items(c).is_none_or(|n| n == report.items.len());
        let ok = report.passed() && elapsed < limit && count_ok;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<13} {}  {}/{} items  {:.2}s (limit {}s){}",
            c.number(),
            c.name(),
            if ok { "PASS" } else { "FAIL" },
            report.pass_count(),
            report.items.len(),
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if count_ok { "" } else { "  unexpected item count" },
        );
        for item in report.failures().take(5) {
            println!("    failed: {} {}", item.input, item.detail);
        }
    }
    println!(
        "acceptance: {} passed, {} failed",
        Criterion::ALL.len() - failed,
        failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
