mod common;

use common::props::*;

#[test]
fn formulations_agree() {
    formulation_equivalence(CASES).unwrap();
}

#[test]
fn affine_images() {
    affine_closure(CASES).unwrap();
}

#[test]
fn conjugates() {
    conjugation_closure(CASES).unwrap();
}

#[test]
fn newton_identities() {
    newton_round_trip(CASES).unwrap();
}

#[test]
fn divrem_gcd_factor_sqrt() {
    arithmetic_invariants(CASES).unwrap();
}

#[test]
fn consecutive_products_split_and_ramified() {
    consecutive_products(CASES).unwrap();
}

#[test]
fn inert_three() {
    assert!(inert_counterexample());
}

#[test]
fn residue_pairing_on_corpus() {
    assert!(corpus_pairing().unwrap() > 20);
}
