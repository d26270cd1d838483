//! The acceptance suite: one runner per criterion, each printing a pass or
//! fail line. The library tests and the `selftest` CLI subcommand share
//! these runners.

use std::time::Instant;

use crate::bounds::{bounds_report, positive_equalities_check};
use crate::castle;
use crate::corpus;
use crate::decompose::{artin_normalize, decompose_positive, verify, SharpnessCertificate};
use crate::diagram::{LinkDiagram, Point};
use crate::poly::LaurentPoly2;
use crate::resolve::{
    build_coherent_tree, homfly_coherent, homfly_oracle, PolyCache,
};
use crate::seifert::SeifertStructure;
use crate::{parse_braid, Result};

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    fn report(name: &'static str, passed: bool, detail: String) -> Self {
        println!("{} - {name} ({detail})", if passed { "PASS" } else { "FAIL" });
        CriterionResult { name, passed, detail }
    }
}

fn torus35() -> LinkDiagram {
    parse_braid("3: 1 2 1 2 1 2 1 2 1 2").unwrap()
}

fn torus35_polynomial() -> LaurentPoly2 {
    let mut p = LaurentPoly2::zero();
    for (a, z, c) in [
        (8, 8, 1),
        (8, 6, 8),
        (8, 4, 21),
        (8, 2, 21),
        (8, 0, 7),
        (10, 6, -1),
        (10, 4, -7),
        (10, 2, -14),
        (10, 0, -8),
        (12, 2, 1),
        (12, 0, 2),
    ] {
        p.add_term(a, z, c.into());
    }
    p
}

/// Mixed-sign corpus shared by several criteria.
fn mixed_corpus(seed: u64) -> Vec<LinkDiagram> {
    let mut v = corpus::mixed_closures(seed, 200);
    v.push(torus35());
    v.push(parse_braid("2: 1 1").unwrap());
    v.push(parse_braid("3: 1 2").unwrap());
    v
}

fn positive_corpus(seed: u64) -> Vec<LinkDiagram> {
    let mut v = corpus::positive_closures(seed.wrapping_add(1), 200, 10);
    v.extend(corpus::positive_three_strand_words(6));
    v
}

/// Criterion 1: the torus-knot ground truth, both engines, under five
/// seconds.
pub fn torus_ground_truth(_seed: u64) -> CriterionResult {
    let start = Instant::now();
    let t = torus35();
    let expected = torus35_polynomial();
    let coherent = homfly_coherent(&t, &PolyCache::new());
    let oracle = homfly_oracle(&t, &PolyCache::new());
    let elapsed = start.elapsed();
    let passed = coherent == expected && oracle == expected && elapsed.as_secs_f64() < 5.0;
    CriterionResult::report(
        "torus (3,5) ground truth",
        passed,
        format!("both engines exact in {:.2?}", elapsed),
    )
}

/// Criterion 2: the unlink formula for one to five components.
pub fn unlink_formula(_seed: u64) -> CriterionResult {
    let passed = (1..=5).all(|n| {
        let d = LinkDiagram::new(Vec::new(), Vec::new(), n).unwrap();
        let expected = LaurentPoly2::unlink(n);
        homfly_coherent(&d, &PolyCache::new()) == expected
            && homfly_oracle(&d, &PolyCache::new()) == expected
    });
    CriterionResult::report("unlink formula", passed, "n = 1..5 exact".into())
}

/// Criterion 3: engine equivalence on 200 random mixed closures.
pub fn engine_equivalence(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let coherent_cache = PolyCache::new();
    let oracle_cache = PolyCache::new();
    let mut failures = 0;
    let diagrams = mixed_corpus(seed);
    let count = diagrams.len();
    for d in diagrams {
        if homfly_coherent(&d, &coherent_cache) != homfly_oracle(&d, &oracle_cache) {
            failures += 1;
        }
    }
    let elapsed = start.elapsed();
    let passed = failures == 0 && elapsed.as_secs_f64() < 600.0;
    CriterionResult::report(
        "engine equivalence",
        passed,
        format!("{count} diagrams, {failures} mismatches, {:.2?}", elapsed),
    )
}

/// Criterion 4: every bound holds everywhere; the crossing bound is sharp
/// exactly when the three degree bounds are; the torus values are exact.
pub fn bounds_validity(seed: u64) -> CriterionResult {
    let cache = PolyCache::new();
    let mut ok = true;
    let mut checked = 0;
    for d in mixed_corpus(seed).into_iter().chain(positive_corpus(seed)) {
        let r = bounds_report(&d, &cache);
        ok &= r.all_bounds_hold() && r.crossing_bound_consistency();
        checked += 1;
    }
    let t = bounds_report(&torus35(), &cache);
    ok &= t.deg_z_max == 8
        && t.deg_a_min == 8
        && t.deg_a_max == 12
        && t.braid_index_lower == 3
        && t.crossing_bound == crate::bounds::Inequality { lhs: 20, rhs: 20, sharp: true }
        && t.upper.sharp
        && t.left.sharp
        && t.right.sharp
        && t.circle_bound.sharp;
    CriterionResult::report(
        "bounds validity",
        ok,
        format!("{checked} diagrams, torus values 8/8/12/3/10"),
    )
}

/// Criterion 5: upper and left bounds sharp on every positive diagram.
pub fn positive_equalities(seed: u64) -> CriterionResult {
    let cache = PolyCache::new();
    let mut ok = true;
    let mut checked = 0;
    for d in positive_corpus(seed) {
        match positive_equalities_check(&d, &cache) {
            Ok(eq) => ok &= eq.upper_sharp && eq.left_sharp,
            Err(_) => ok = false,
        }
        checked += 1;
    }
    CriterionResult::report(
        "positive upper and left equalities",
        ok,
        format!("{checked} positive diagrams"),
    )
}

/// Criterion 6: the constructive verdict agrees with the degree test on the
/// positive corpora, and every script replays to an isomorphic diagram.
pub fn sharpness_equivalence(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let cache = PolyCache::new();
    let mut ok = true;
    let mut decomposable = 0;
    let mut checked = 0;
    for d in positive_corpus(seed) {
        checked += 1;
        match decompose_positive(&d, &cache) {
            Ok(cert) => {
                // decompose_positive itself asserts verdict == degree test
                if let Some(script) = cert.script() {
                    decomposable += 1;
                    match verify(script, &d) {
                        Ok(true) => {}
                        _ => ok = false,
                    }
                }
            }
            Err(_) => ok = false,
        }
    }
    let elapsed = start.elapsed();
    let passed = ok && elapsed.as_secs_f64() < 1800.0;
    CriterionResult::report(
        "constructive sharpness equivalence",
        passed,
        format!("{checked} positive diagrams, {decomposable} decomposable, {:.2?}", elapsed),
    )
}

/// Criterion 7: diagrams built by random move scripts are decomposable and
/// realize the right bound.
pub fn forward_direction(seed: u64) -> CriterionResult {
    let cache = PolyCache::new();
    let mut ok = true;
    let scripts = corpus::random_move_scripts(seed.wrapping_add(2), 100, 8);
    let count = scripts.len();
    for (_, d) in scripts {
        ok &= crate::bounds::right_bound_sharp(&d, &cache);
        match decompose_positive(&d, &cache) {
            Ok(SharpnessCertificate::Decomposable { script, .. }) => {
                ok &= verify(&script, &d).unwrap_or(false);
            }
            _ => ok = false,
        }
    }
    CriterionResult::report(
        "move-built diagrams realize the bound",
        ok,
        format!("{count} scripts"),
    )
}

/// Criterion 8: appropriate points exist, and trap-free castles have
/// coherent towers and unique lower-level neighbors.
pub fn castle_properties(seed: u64) -> CriterionResult {
    let mut ok = true;
    let mut castles = 0;
    let mut diagrams = 0;
    for d in mixed_corpus(seed).into_iter().chain(positive_corpus(seed)) {
        diagrams += 1;
        let s = SeifertStructure::new(&d);
        let found = castle::find_appropriate_point(&d, &s).is_ok();
        ok &= found;
        for x in castle::candidate_base_points(&d, &s).unwrap_or_default() {
            let Ok(c) = castle::build_castle(&d, &s, x) else {
                ok = false;
                continue;
            };
            if castle::has_traps(&d, &s, &c) {
                continue;
            }
            castles += 1;
            ok &= castle::unique_lower_neighbors(&c);
            ok &= castle::towers(&s, &c).iter().all(|t| t.coherent);
        }
    }
    CriterionResult::report(
        "appropriate points and trap-free castle structure",
        ok,
        format!("{diagrams} diagrams, {castles} trap-free castles"),
    )
}

/// Criterion 9: a leaf of a coherent tree contributes to the highest
/// a-degree exactly when all its component projections are simple.
pub fn leaf_criterion(seed: u64) -> CriterionResult {
    let mut ok = true;
    let mut leaves = 0;
    let mut diagrams: Vec<LinkDiagram> = corpus::positive_three_strand_words(6);
    diagrams.extend(corpus::mixed_closures(seed.wrapping_add(3), 40).into_iter().filter(|d| d.crossing_count() <= 8));
    let count = diagrams.len();
    for d in diagrams {
        let tree = build_coherent_tree(&d);
        for leaf in &tree.leaves {
            leaves += 1;
            ok &= tree.leaf_contributes_to_top(leaf) == leaf.all_projections_simple;
        }
    }
    CriterionResult::report(
        "top-degree leaves have simple projections",
        ok,
        format!("{count} trees, {leaves} leaves"),
    )
}

/// Criterion 10: the mirror substitution law across the corpus.
pub fn mirror_law(seed: u64) -> CriterionResult {
    let cache = PolyCache::new();
    let mut ok = true;
    let mut checked = 0;
    for d in mixed_corpus(seed).into_iter().chain(positive_corpus(seed)) {
        let lhs = homfly_coherent(&d.mirror(), &cache);
        let rhs = homfly_coherent(&d, &cache).substitute_mirror();
        ok &= lhs == rhs;
        checked += 1;
    }
    CriterionResult::report("mirror law", ok, format!("{checked} diagrams"))
}

/// Criterion 11: normalization decreases the potential by exactly one per
/// move and stops within the initial potential.
pub fn normalization_potential(seed: u64) -> CriterionResult {
    let mut ok = true;
    let mut moves = 0;
    let mut runs = 0;
    for d in positive_corpus(seed) {
        let work = d.remove_trivial_components();
        if work.crossing_count() == 0 {
            continue;
        }
        let s = SeifertStructure::new(&work);
        let Ok(x) = castle::find_appropriate_point(&work, &s) else {
            ok = false;
            continue;
        };
        if matches!(x, Point::Trivial(_)) {
            continue;
        }
        match artin_normalize(&work, x) {
            Ok((_, steps)) => {
                runs += 1;
                if let Some(first) = steps.first() {
                    ok &= steps.len() <= first.potential_before;
                }
                for st in &steps {
                    ok &= st.potential_after + 1 == st.potential_before;
                    moves += 1;
                }
            }
            Err(_) => ok = false,
        }
    }
    CriterionResult::report(
        "normalization potential",
        ok,
        format!("{runs} runs, {moves} moves, each dropping the potential by one"),
    )
}

/// Runs the whole acceptance suite with one seed.
pub fn run_all(seed: u64) -> Result<Vec<CriterionResult>> {
    Ok(vec![
        torus_ground_truth(seed),
        unlink_formula(seed),
        engine_equivalence(seed),
        bounds_validity(seed),
        positive_equalities(seed),
        sharpness_equivalence(seed),
        forward_direction(seed),
        castle_properties(seed),
        leaf_criterion(seed),
        mirror_law(seed),
        normalization_potential(seed),
    ])
}
