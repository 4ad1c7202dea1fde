//! Human-readable rendering of verification reports.

use std::fmt::Write;

use rumin_core::VerifyReport;

/// Failure witnesses printed per report before the rest are summarized.
pub const SHOWN_FAILURES: usize = 10;

pub fn render(r: &VerifyReport) -> String {
    let mut out = String::new();
    let status = if r.passed { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "{status} {} (n = {}, trials = {}, seed = {}, max poly degree = {}): {} checks, {} failures, {} ms",
        r.suite,
        r.n,
        r.trials,
        r.seed,
        r.max_poly_degree,
        r.checks,
        r.failures.len(),
        r.wall_time_ms
    );
    for note in &r.notes {
        let _ = writeln!(out, "  {note}");
    }
    for w in r.failures.iter().take(SHOWN_FAILURES) {
        let _ = writeln!(out, "  failed [trial {}] {}", w.trial, w.check);
        for (i, input) in w.inputs.iter().enumerate() {
            let _ = writeln!(out, "    input {}: {input}", i + 1);
        }
        let _ = writeln!(out, "    residual: {}", w.residual);
    }
    if r.failures.len() > SHOWN_FAILURES {
        let _ = writeln!(out, "  ... and {} more", r.failures.len() - SHOWN_FAILURES);
    }
    out
}
