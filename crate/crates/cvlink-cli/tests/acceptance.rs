//! Acceptance gate: one test per verification criterion. Each test prints
//! the criterion's full check table (visible with `--nocapture`, and in the
//! failure output otherwise) and then asserts that every check passed.
//!
//! These are the same computations `cvlink verify` runs, so a failure here
//! reproduces exactly on the command line.

use cvlink_cli::checks::{self, CriterionReport};

fn assert_criterion(report: CriterionReport) {
    println!("criterion {:>2}: {}", report.index, report.title);
    for check in &report.checks {
        println!(
            "  [{}] {} | expected {} | got {} | tol {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.expected,
            check.got,
            check.tolerance
        );
    }
    let failed: Vec<String> = report
        .failed_checks()
        .map(|c| format!("{} (expected {}, got {})", c.name, c.expected, c.got))
        .collect();
    assert!(
        failed.is_empty(),
        "criterion {} \"{}\": {} of {} checks failed:\n  {}",
        report.index,
        report.title,
        failed.len(),
        report.checks.len(),
        failed.join("\n  ")
    );
}

#[test]
fn criterion_01_one_way_covariance_family() {
    assert_criterion(checks::criterion_01());
}

#[test]
fn criterion_02_two_way_riccati_dynamics() {
    assert_criterion(checks::criterion_02());
}

#[test]
fn criterion_03_optimal_squeezing() {
    assert_criterion(checks::criterion_03());
}

#[test]
fn criterion_04_negativity_plateau() {
    assert_criterion(checks::criterion_04());
}

#[test]
fn criterion_05_coherent_light_threshold() {
    assert_criterion(checks::criterion_05());
}

#[test]
fn criterion_06_lossy_epr_source() {
    assert_criterion(checks::criterion_06());
}

#[test]
fn criterion_07_teleportation_fidelities() {
    assert_criterion(checks::criterion_07());
}

#[test]
fn criterion_08_splitter_tree_polygamy() {
    assert_criterion(checks::criterion_08());
}

#[test]
fn criterion_09_structural_invariants() {
    assert_criterion(checks::criterion_09());
}

#[test]
fn criterion_10_model_adjudication() {
    assert_criterion(checks::criterion_10());
}
