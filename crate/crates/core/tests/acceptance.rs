//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use symcurve::repro::{run_criterion, Options, CRITERIA};

fn main() -> ExitCode {
    let opts = Options::default();
    let mut failed = Vec::new();
    for id in CRITERIA {
        let start = Instant::now();
        let r = run_criterion(id, &opts);
        println!(
            "criterion {:>3} {} {} | measured {:.12e} expected {:.12e} deviation {:.3e} tol {:.1e} | {} [{:.2?}]",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.measured,
            r.expected,
            r.deviation,
            r.tolerance,
            r.detail,
            start.elapsed()
        );
        if !r.pass {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of {} criteria fail: {}", failed.len(), CRITERIA.len(), failed.join(", "));
        ExitCode::FAILURE
    }
}
