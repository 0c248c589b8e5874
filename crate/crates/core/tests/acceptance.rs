//! The acceptance suite as an integration test target: one test per
//! numbered criterion, printing one pass/fail line each (visible with
//! `--nocapture`).
//!
//! Criterion B8 contains a deliberate, documented red: the quoted ≈3.1
//! reference constant for the boundary-gradient lower bound at q = 2 does
//! not match its own formula (which evaluates to 2.0441). The comparison
//! is asserted as specified rather than adjusted to pass; see README.

use annulus_core::acceptance::{self, CriterionResult};

fn run(result: CriterionResult) {
    let status = if result.passed { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {:2}: {}", result.id, result.name);
    for line in &result.details {
        println!("         {line}");
    }
    assert!(
        result.passed,
        "criterion {} ({}) failed:\n{}",
        result.id,
        result.name,
        result.details.join("\n")
    );
}

#[test]
fn criterion_01_crossing_identity() {
    run(acceptance::criterion_01());
}

#[test]
fn criterion_02_minimal_modulus() {
    run(acceptance::criterion_02());
}

#[test]
fn criterion_03_threshold_modulus() {
    run(acceptance::criterion_03());
}

#[test]
fn criterion_04_disk_branch_threshold() {
    run(acceptance::criterion_04());
}

#[test]
fn criterion_05_modulus_bounds_suite() {
    run(acceptance::criterion_05());
}

#[test]
fn criterion_06_normalized_eigenvalue_bounds() {
    run(acceptance::criterion_06());
}

#[test]
fn criterion_07_energy_identity() {
    run(acceptance::criterion_07());
}

#[test]
fn criterion_08_b_function_suite() {
    run(acceptance::criterion_08());
}

#[test]
fn criterion_09_free_boundary_audit() {
    run(acceptance::criterion_09());
}

#[test]
fn criterion_10_galerkin_equivalence() {
    run(acceptance::criterion_10());
}

#[test]
fn criterion_11_symmetric_maximizer_evidence() {
    run(acceptance::criterion_11());
}

#[test]
fn criterion_12_small_modulus_non_maximality() {
    run(acceptance::criterion_12());
}
