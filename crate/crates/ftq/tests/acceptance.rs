//! Acceptance gate: one test per verification check, each printing a single
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).
//! The same checks back the CLI's `verify-all` subcommand.

use ftq::verify::{self, CheckOutcome};

fn gate(index: usize, outcome: ftq::Result<CheckOutcome>) {
    let outcome = outcome.expect("check must run to completion");
    println!(
        "criterion {:2} ({}): {} — {} instances; {} [{} ms]",
        index,
        outcome.name,
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.instances,
        outcome.details,
        outcome.elapsed_ms
    );
    assert!(outcome.passed, "{}: {}", outcome.name, outcome.details);
}

#[test]
fn criterion_01_euclidean_reduction_examples() {
    gate(1, verify::euclidean_reduction_examples());
}

#[test]
fn criterion_02_equidistribution_decision() {
    gate(2, verify::equidistribution_decision());
}

#[test]
fn criterion_03_character_bound_sweep() {
    gate(3, verify::character_bound_sweep());
}

#[test]
fn criterion_04_total_ergodicity_dichotomy() {
    gate(4, verify::total_ergodicity_dichotomy());
}

#[test]
fn criterion_05_multiplier_identity() {
    gate(5, verify::multiplier_identity());
}

#[test]
fn criterion_06_difference_and_root_bounds() {
    gate(6, verify::difference_and_root_bounds());
}

#[test]
fn criterion_07_square_free_sets() {
    gate(7, verify::square_free_sets());
}

#[test]
fn criterion_08_three_term_decay() {
    gate(8, verify::three_term_decay());
}

#[test]
fn criterion_09_partition_regularity() {
    gate(9, verify::partition_regularity());
}

#[test]
fn criterion_10_constant_condition_agreement() {
    gate(10, verify::constant_condition_agreement());
}
