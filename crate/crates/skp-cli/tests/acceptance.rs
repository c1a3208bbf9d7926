//! Acceptance suite: runs every registered check once and prints one
//! PASS/FAIL line per acceptance criterion. Exits nonzero if any criterion
//! fails or exceeds its runtime budget.

use std::process::ExitCode;
use std::time::Instant;

use skp_cli::checks::{registry, Config, Ctx, CRITERIA};
use skp_cli::report::{run_checks, Status};

/// Runtime budget in milliseconds per criterion, where one is pinned.
fn budget_ms(criterion: u8) -> Option<u64> {
    match criterion {
        1..=3 => Some(1_000),
        4 => Some(5_000),
        5 => Some(30_000),
        _ => None,
    }
}

fn main() -> ExitCode {
    let cfg = Config { precision_bits: 256, tolerance: 1e-50, e2e_tolerance: 1e-35 };
    let ctx = Ctx::new(cfg);
    let checks = registry();
    // One thread keeps the per-criterion timings meaningful.
    let start = Instant::now();
    let records = run_checks(&ctx, &checks, 1).expect("thread pool");
    let mut failed = 0;
    for (k, title) in CRITERIA.iter().enumerate() {
        let criterion = k as u8 + 1;
        let group: Vec<_> = records.iter().filter(|r| r.criterion == criterion).collect();
        let bad: Vec<&str> = group.iter().filter(|r| r.status != Status::Pass).map(|r| r.id.as_str()).collect();
        let ms: u64 = group.iter().map(|r| r.runtime_ms).sum();
        let over = budget_ms(criterion).filter(|&b| ms > b);
        let ok = !group.is_empty() && bad.is_empty() && over.is_none();
        if !ok {
            failed += 1;
        }
        let mut line = format!("{} criterion {criterion:2} ({title}): {} checks, {ms} ms", if ok { "PASS" } else { "FAIL" }, group.len());
        if !bad.is_empty() {
            line.push_str(&format!("; failing: {}", bad.join(", ")));
        }
        if let Some(b) = over {
            line.push_str(&format!("; over budget of {b} ms"));
        }
        println!("{line}");
    }
    let extra: Vec<&str> =
        records.iter().filter(|r| r.criterion == 0 && r.status != Status::Pass).map(|r| r.id.as_str()).collect();
    let extra_total = records.iter().filter(|r| r.criterion == 0).count();
    println!(
        "{} supplementary checks ({extra_total}){}",
        if extra.is_empty() { "PASS" } else { "FAIL" },
        if extra.is_empty() { String::new() } else { format!(": failing {}", extra.join(", ")) }
    );
    println!("total {:.1} s, {failed} of {} criteria failed", start.elapsed().as_secs_f64(), CRITERIA.len());
    if failed == 0 && extra.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
