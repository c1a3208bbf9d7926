//! Running checks and assembling the JSON report.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{param_at_elliptic, registry, Check, Config, Ctx, Suite};

/// Status of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check returned an error or panicked.
    Error,
}

/// One line of the report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The claim being checked, in words.
    pub paper_ref: String,
    pub suite: Suite,
    pub criterion: u8,
    pub status: Status,
    pub residual: Option<f64>,
    pub detail: String,
    pub runtime_ms: u64,
}

/// Counts by status.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

/// A CM point paired with the elliptic point carrying the same fiber.
#[derive(Clone, Debug, Serialize)]
pub struct Pairing {
    pub cm_point: usize,
    pub elliptic_point: usize,
    pub t: String,
}

/// The full report.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: Config,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub pairing: Vec<Pairing>,
}

impl Report {
    /// True if every check passed.
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| e.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".into())
}

/// Runs one check, converting errors and panics into an `error` record.
pub fn run_check(ctx: &Ctx, check: &Check) -> CheckRecord {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| (check.run)(ctx)));
    let runtime_ms = start.elapsed().as_millis() as u64;
    let (status, residual, detail) = match result {
        Ok(Ok(o)) => (if o.passed { Status::Pass } else { Status::Fail }, o.residual, o.detail),
        Ok(Err(e)) => (Status::Error, None, e),
        Err(p) => (Status::Error, None, format!("panicked: {}", panic_message(p))),
    };
    CheckRecord {
        id: check.id.to_string(),
        paper_ref: check.description.to_string(),
        suite: check.suite,
        criterion: check.criterion,
        status,
        residual,
        detail,
        runtime_ms,
    }
}

/// Selects checks by suite (all suites when `suites` is empty).
pub fn select(suites: &[Suite]) -> Vec<Check> {
    registry().into_iter().filter(|c| suites.is_empty() || suites.contains(&c.suite)).collect()
}

/// Runs `checks` on a pool of `jobs` threads (0: rayon default). Records are
/// sorted by id, so the report does not depend on scheduling.
pub fn run_checks(ctx: &Ctx, checks: &[Check], jobs: usize) -> Result<Vec<CheckRecord>, rayon::ThreadPoolBuildError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let mut records: Vec<CheckRecord> = pool.install(|| checks.par_iter().map(|c| run_check(ctx, c)).collect());
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(records)
}

/// Tallies the records.
pub fn summarize(records: &[CheckRecord]) -> Summary {
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    Summary { total: records.len(), passed: count(Status::Pass), failed: count(Status::Fail), errors: count(Status::Error) }
}

/// The CM-elliptic pairing, with the parameter evaluated at each elliptic
/// point.
pub fn pairing(ctx: &Ctx) -> Vec<Pairing> {
    skp::cm::CASES
        .iter()
        .filter_map(|c| c.elliptic_partner.map(|nu| (c.index, nu)))
        .map(|(cm_point, nu)| {
            let t = match param_at_elliptic(ctx, nu) {
                Ok((Some(t), _)) => t.to_string(),
                Ok((None, _)) => "unrecognized".into(),
                Err(e) => e,
            };
            Pairing { cm_point, elliptic_point: nu, t }
        })
        .collect()
}

/// Runs the selected suites and builds the report.
pub fn build_report(cfg: Config, suites: &[Suite], jobs: usize) -> Result<Report, rayon::ThreadPoolBuildError> {
    let ctx = Ctx::new(cfg.clone());
    let checks = run_checks(&ctx, &select(suites), jobs)?;
    let pairing = if suites.is_empty() || suites.contains(&Suite::Period) { pairing(&ctx) } else { Vec::new() };
    Ok(Report { config: cfg, summary: summarize(&checks), checks, pairing })
}

/// One line per record, for terminal output.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for r in &report.checks {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let residual = r.residual.map_or(String::new(), |v| format!(" residual={v:.3e}"));
        out.push_str(&format!("{status:5} {:40} {:6}ms{residual}  {}\n", r.id, r.runtime_ms, r.detail));
    }
    let s = &report.summary;
    out.push_str(&format!("{} checks: {} passed, {} failed, {} errors\n", s.total, s.passed, s.failed, s.errors));
    out
}
