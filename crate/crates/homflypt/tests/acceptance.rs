//! The acceptance suite: every criterion runs at its stated tolerance and
//! prints one pass or fail line.

use homflypt::selftest;

const SEED: u64 = 0x5eed;

#[test]
fn criterion_01_torus_ground_truth() {
    assert!(selftest::torus_ground_truth(SEED).passed);
}

#[test]
fn criterion_02_unlink_formula() {
    assert!(selftest::unlink_formula(SEED).passed);
}

#[test]
fn criterion_03_engine_equivalence() {
    assert!(selftest::engine_equivalence(SEED).passed);
}

#[test]
fn criterion_04_bounds_validity() {
    assert!(selftest::bounds_validity(SEED).passed);
}

#[test]
fn criterion_05_positive_equalities() {
    assert!(selftest::positive_equalities(SEED).passed);
}

#[test]
fn criterion_06_constructive_sharpness_equivalence() {
    assert!(selftest::sharpness_equivalence(SEED).passed);
}

#[test]
fn criterion_07_forward_direction() {
    assert!(selftest::forward_direction(SEED).passed);
}

#[test]
fn criterion_08_castle_properties() {
    assert!(selftest::castle_properties(SEED).passed);
}

#[test]
fn criterion_09_leaf_criterion() {
    assert!(selftest::leaf_criterion(SEED).passed);
}

#[test]
fn criterion_10_mirror_law() {
    assert!(selftest::mirror_law(SEED).passed);
}

#[test]
fn criterion_11_normalization_potential() {
    assert!(selftest::normalization_potential(SEED).passed);
}
