//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.
//!
//! Every numeric check is exact (tolerance 0). The only tolerances are the
//! wall-clock budgets in [`tjspec_cli::verify::budget`].

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Duration;

use tjspec_cli::verify::{budget, run_checks, CheckResult, Ctx, Outcome};

const TITLES: [&str; 8] = [
    "counterexample reproduction",
    "sign pattern of the defect on swh sweeps",
    "weighted-homogeneous equality",
    "two-pair closed forms",
    "three-monomial consistency",
    "oracle equivalence",
    "enumeration parity",
    "property suites",
];

fn main() -> ExitCode {
    let results = run_checks(&Ctx::default());
    let mut by_criterion: BTreeMap<u8, Vec<&CheckResult>> = BTreeMap::new();
    for r in &results {
        by_criterion.entry(r.criterion).or_default().push(r);
    }

    let mut failed = 0;
    for (criterion, checks) in &by_criterion {
        let elapsed: Duration = checks.iter().map(|c| c.elapsed).sum();
        let limit = budget(*criterion);
        let mut problems: Vec<String> = checks
            .iter()
            .filter(|c| c.outcome.is_fail())
            .map(|c| format!("{}: {}", c.name, c.outcome.detail()))
            .collect();
        if elapsed > limit {
            problems.push(format!(
                "took {:.2}s, budget {}s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            ));
        }
        let title = TITLES[usize::from(*criterion) - 1];
        if problems.is_empty() {
            let notes: Vec<&str> = checks
                .iter()
                .filter(|c| !matches!(c.outcome, Outcome::Skipped(_)))
                .map(|c| c.outcome.detail())
                .collect();
            println!(
                "PASS criterion {criterion}: {title} ({:.3}s / {}s) {}",
                elapsed.as_secs_f64(),
                limit.as_secs(),
                notes.join("; ")
            );
        } else {
            failed += 1;
            println!(
                "FAIL criterion {criterion}: {title}: {}",
                problems.join("; ")
            );
        }
    }
    println!("{} criteria, {failed} failed", by_criterion.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
