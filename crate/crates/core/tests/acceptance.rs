//! Acceptance run: every section of the full suite at its stated bounds and
//! time budget, followed by a byte-level determinism check of the whole
//! report.

use std::time::{Duration, Instant};

use qsphere::report::render_text;
use qsphere::suite::{run_section, run_suite, Level, SuiteReport, SCHEMA};

const BUDGET_SECS: [u64; 10] = [30, 10, 60, 60, 60, 300, 120, 60, 120, 600];

fn main() {
    let mut sections = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for id in 1..=10u32 {
        let start = Instant::now();
        let s = run_section(id, Level::Full);
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(BUDGET_SECS[id as usize - 1]);
        let mut pass = s.pass && elapsed <= budget;
        let mut note = String::new();
        if id == 10 {
            sections.push(s.clone());
            let first = SuiteReport {
                schema: SCHEMA.into(),
                level: Level::Full,
                pass: sections.iter().all(|s| s.pass),
                sections: sections.clone(),
            };
            let second = run_suite(Level::Full);
            let same_json = first.to_json() == second.to_json();
            let same_text = first.to_text() == second.to_text();
            note = format!(", rerun byte-identical: {}", same_json && same_text);
            pass &= same_json && same_text;
        } else {
            sections.push(s.clone());
        }
        if !s.pass {
            eprintln!(
                "{}",
                render_text(
                    &s.records
                        .iter()
                        .filter(|r| !r.pass)
                        .cloned()
                        .collect::<Vec<_>>()
                )
            );
        }
        let line = format!(
            "criterion {id:>2} {:<24} {} ({} checks, {:.1}s of {}s{note})",
            s.name,
            if pass { "PASS" } else { "FAIL" },
            s.records.len(),
            elapsed.as_secs_f64(),
            budget.as_secs(),
        );
        println!("{line}");
        lines.push(line);
        all &= pass;
    }
    println!("acceptance: {}", if all { "PASS" } else { "FAIL" });
    assert!(
        all,
        "failing criteria:\n{}",
        lines
            .iter()
            .filter(|l| l.contains("FAIL"))
            .cloned()
            .collect::<Vec<_>>()
            .join("\n")
    );
}
