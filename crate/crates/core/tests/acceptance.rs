//! Acceptance suite: runs every top-level criterion at its stated tolerance
//! and prints one pass/fail line per criterion.
//!
//! The suite is executed once and shared across the per-criterion tests;
//! the determinism criterion re-runs it internally and compares bytes.

use std::sync::OnceLock;

use optseq::verify::{run_all, VerifyConfig, VerifyReport};

fn report() -> &'static VerifyReport {
    static REPORT: OnceLock<VerifyReport> = OnceLock::new();
    REPORT.get_or_init(|| run_all(&VerifyConfig::default()))
}

fn check(index: usize) {
    let outcome = report()
        .outcomes
        .iter()
        .find(|o| o.index == index)
        .expect("criterion present");
    println!(
        "criterion {:2}: {} - {} ({})",
        outcome.index,
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.name,
        outcome.detail
    );
    assert!(outcome.passed, "criterion {index} failed: {}", outcome.detail);
}

#[test]
fn criterion_01_lp_exactness() {
    check(1);
}

#[test]
fn criterion_02_embedding_chain() {
    check(2);
}

#[test]
fn criterion_03_oracle_equivalence() {
    check(3);
}

#[test]
fn criterion_04_index_recovery() {
    check(4);
}

#[test]
fn criterion_05_classification_table() {
    check(5);
}

#[test]
fn criterion_06_criterion_constants() {
    check(6);
}

#[test]
fn criterion_07_holder_pairing() {
    check(7);
}

#[test]
fn criterion_08_tensor_properties() {
    check(8);
}

#[test]
fn criterion_09_sequence_oracles() {
    check(9);
}

#[test]
fn criterion_10_determinism() {
    check(10);
}
