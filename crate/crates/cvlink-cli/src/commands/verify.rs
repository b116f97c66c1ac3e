//! The `verify` subcommand: runs the numbered verification criteria and
//! prints one table row per check, then a summary. Exit code 0 means every
//! selected criterion passed, 1 means at least one failed, 2 means the
//! `--only` filter matched nothing.

use crate::checks::{self, CriterionReport};

fn print_report(report: &CriterionReport) {
    println!("criterion {:>2}: {}", report.index, report.title);
    let name_w = report
        .checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let exp_w = report
        .checks
        .iter()
        .map(|c| c.expected.len())
        .max()
        .unwrap_or(8)
        .max(8);
    let got_w = report
        .checks
        .iter()
        .map(|c| c.got.len())
        .max()
        .unwrap_or(3)
        .max(3);
    println!(
        "  {:6}  {:name_w$}  {:exp_w$}  {:got_w$}  {}",
        "status", "check", "expected", "got", "tolerance"
    );
    for check in &report.checks {
        println!(
            "  {:6}  {:name_w$}  {:exp_w$}  {:got_w$}  {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.expected,
            check.got,
            check.tolerance
        );
    }
    let failed = report.failed_checks().count();
    if failed == 0 {
        println!("  => PASS ({} checks)", report.checks.len());
    } else {
        println!(
            "  => FAIL ({failed} of {} checks failed)",
            report.checks.len()
        );
    }
    println!();
}

fn print_adjudication() {
    println!("noise-rate adjudication (short-time slope of the x-combination)");
    println!(
        "  {:>5}  {:>5}  {:>7}  {:>18}  {:>18}  {:>18}",
        "eps", "r", "tau", "measured", "derived", "variant"
    );
    for row in checks::alpha_adjudication() {
        println!(
            "  {:>5}  {:>5}  {:>7.0e}  {:>18.12e}  {:>18.12e}  {:>18.12e}",
            row.epsilon, row.r, row.tau, row.measured, row.derived, row.variant
        );
    }
    println!();
    println!("optimized-fidelity adjudication (numeric maximum over local squeezing)");
    println!(
        "  {:>5}  {:>5}  {:>7}  {:>18}  {:>18}  {:>18}",
        "eps", "r", "tau", "numeric", "product-form", "variant"
    );
    for row in checks::prefactor_adjudication() {
        println!(
            "  {:>5}  {:>5}  {:>7.0e}  {:>18.12e}  {:>18.12e}  {:>18.12e}",
            row.epsilon, row.r, row.tau, row.numeric, row.product_form, row.variant
        );
    }
    println!();
}

pub fn execute(only: Option<&str>, adjudicate: bool) -> i32 {
    let Some(reports) = checks::run_criteria(only) else {
        eprintln!(
            "error: --only {:?} matches no criterion; titles are: {}",
            only.unwrap_or(""),
            checks::TITLES.join(", ")
        );
        return 2;
    };
    for report in &reports {
        print_report(report);
    }
    if adjudicate {
        print_adjudication();
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.index.to_string())
        .collect();
    if failed.is_empty() {
        println!("all {} criteria passed", reports.len());
        0
    } else {
        println!(
            "{} of {} criteria passed; FAILED: {}",
            reports.len() - failed.len(),
            reports.len(),
            failed.join(", ")
        );
        1
    }
}
