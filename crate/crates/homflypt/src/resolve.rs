//! The polynomial invariant, computed two independent ways.
//!
//! The oracle engine resolves the first ascending crossing of a fixed travel
//! and recurses through the skein relation; it knows nothing about castles.
//! The coherent engine follows the resolution-tree construction: pick an
//! appropriate base point, walk the maximal descending or ascending path its
//! circle's looseness dictates, branch at the first violating crossing into
//! the smoothed and flipped diagrams, and split fully coherent components
//! off as unknot factors. Both memoize on canonical diagram codes, so
//! isomorphic subproblems collapse.
//!
//! `build_coherent_tree` runs the same construction without memoization or
//! component splitting and materializes every leaf, for the structural
//! checks on leaves of coherent trees.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Mutex;

use crate::castle;
use crate::diagram::{ArcId, CrossingId, LinkDiagram, Point, Sign};
use crate::poly::LaurentPoly2;
use crate::seifert::SeifertStructure;
use crate::{canonical_code, Error, Result};

/// Memo table from canonical diagram codes to polynomials. Threads may
/// insert concurrently; every writer computes the same value for a key.
/// `HOMFLYPT_CACHE_CAP` bounds the entry count (the table is cleared when
/// the cap is hit).
pub struct PolyCache {
    inner: Mutex<HashMap<Vec<i64>, LaurentPoly2>>,
    cap: Option<usize>,
}

impl Default for PolyCache {
    fn default() -> Self {
        Self::new()
    }
}

impl PolyCache {
    pub fn new() -> Self {
        let cap = std::env::var("HOMFLYPT_CACHE_CAP")
            .ok()
            .and_then(|s| s.parse().ok());
        PolyCache { inner: Mutex::new(HashMap::new()), cap }
    }

    fn get(&self, key: &[i64]) -> Option<LaurentPoly2> {
        self.inner.lock().unwrap().get(key).cloned()
    }

    fn insert(&self, key: Vec<i64>, value: LaurentPoly2) {
        let mut map = self.inner.lock().unwrap();
        if let Some(cap) = self.cap {
            if map.len() >= cap {
                map.clear();
            }
        }
        map.insert(key, value);
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Which travel rule a phase follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Descending,
    Ascending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub crossing: CrossingId,
    pub on_over_strand: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathOutcome {
    Closed,
    Violation(CrossingId),
}

#[derive(Debug, Clone)]
pub struct CoherentPath {
    pub rule: Rule,
    pub passages: Vec<Passage>,
    pub outcome: PathOutcome,
}

fn passage_is_over(d: &LinkDiagram, c: CrossingId, in_slot: u8) -> bool {
    match d.crossings()[c].sign {
        Sign::Positive => in_slot == 3,
        Sign::Negative => in_slot == 1,
    }
}

/// Walks the component of `x` from `x`, reporting first touches of
/// crossings not incident to `skip_comps` and stopping at the first one met
/// on the wrong strand for the rule.
fn walk_phase(
    d: &LinkDiagram,
    x: ArcId,
    rule: Rule,
    skip_comps: &BTreeSet<usize>,
) -> CoherentPath {
    let comp_of = d.component_of_arcs();
    let mut passages = Vec::new();
    let mut touched: HashSet<CrossingId> = HashSet::new();
    let mut arc = x;
    loop {
        let head = d.arcs()[arc].head;
        let c = head.crossing;
        let over = passage_is_over(d, c, head.slot);
        let other_slot = match (d.crossings()[c].sign, over) {
            (_, true) => 0,
            (Sign::Positive, false) => 3,
            (Sign::Negative, false) => 1,
        };
        let other_comp = comp_of[d.arc_at(crate::diagram::EndPoint::new(c, other_slot))];
        let skip = skip_comps.contains(&other_comp) || touched.contains(&c);
        if !skip {
            touched.insert(c);
            passages.push(Passage { crossing: c, on_over_strand: over });
            let violation = match rule {
                Rule::Descending => !over,
                Rule::Ascending => over,
            };
            if violation {
                return CoherentPath { rule, passages, outcome: PathOutcome::Violation(c) };
            }
        }
        arc = d.next_strand_arc(arc);
        if arc == x {
            return CoherentPath { rule, passages, outcome: PathOutcome::Closed };
        }
    }
}

fn rule_for(s: &SeifertStructure, circle: usize) -> Rule {
    if s.loose_left(circle) {
        Rule::Descending
    } else {
        Rule::Ascending
    }
}

/// The maximal coherent path from an innermost point: the descending rule
/// when its circle is loose on the left, the ascending rule when loose on
/// the right. Returns the passages up to the first crossing met on the
/// wrong strand, or the full closed travel.
pub fn maximal_coherent_path(d: &LinkDiagram, x: Point) -> Result<CoherentPath> {
    let arc = match x {
        Point::Trivial(_) => {
            return Ok(CoherentPath {
                rule: Rule::Descending,
                passages: Vec::new(),
                outcome: PathOutcome::Closed,
            })
        }
        Point::Arc(a) => a,
    };
    let s = SeifertStructure::new(d);
    let circle = s.circle_of_arc(arc);
    if !s.innermost(circle) {
        return Err(Error::NotInnermost);
    }
    Ok(walk_phase(d, arc, rule_for(&s, circle), &BTreeSet::new()))
}

/// Skein weights for resolving a crossing of the given sign:
/// `(flip weight, smooth weight)`.
fn skein_weights(sign: Sign) -> (LaurentPoly2, LaurentPoly2) {
    match sign {
        Sign::Positive => (
            LaurentPoly2::monomial(2, 0, 1),
            LaurentPoly2::monomial(1, 1, 1),
        ),
        Sign::Negative => (
            LaurentPoly2::monomial(-2, 0, 1),
            LaurentPoly2::monomial(-1, 1, -1),
        ),
    }
}

/// Plain descending-resolution engine: fixed base points, no castles.
pub fn homfly_oracle(d: &LinkDiagram, cache: &PolyCache) -> LaurentPoly2 {
    assert!(
        d.component_count() > 0,
        "the polynomial of the empty diagram is undefined"
    );
    let trivial = d.trivial_components();
    if d.crossing_count() == 0 {
        return LaurentPoly2::unlink(trivial);
    }
    let stripped = d.remove_trivial_components();
    let p = oracle_stripped(&stripped, cache);
    p.mul(&LaurentPoly2::split_factor().pow(trivial))
}

fn oracle_stripped(d: &LinkDiagram, cache: &PolyCache) -> LaurentPoly2 {
    let key = canonical_code(d);
    if let Some(p) = cache.get(&key) {
        return p;
    }
    // Travel every component from its smallest arc; resolve the first
    // crossing whose under-strand is reached before its over-strand.
    let comps = d.strand_components();
    let mut seen_over: HashSet<CrossingId> = HashSet::new();
    let mut pivot = None;
    'travel: for comp in &comps {
        for &arc in comp {
            let head = d.arcs()[arc].head;
            let over = passage_is_over(d, head.crossing, head.slot);
            if over {
                seen_over.insert(head.crossing);
            } else if !seen_over.contains(&head.crossing) {
                pivot = Some(head.crossing);
                break 'travel;
            }
        }
    }
    let value = match pivot {
        None => LaurentPoly2::unlink(comps.len()),
        Some(c) => {
            let sign = d.crossings()[c].sign;
            let (w_flip, w_smooth) = skein_weights(sign);
            let flipped = d.flip_crossing(c).expect("pivot exists");
            let (smoothed, _) = d.smooth_crossing(c).expect("pivot exists");
            w_flip
                .mul(&homfly_oracle(&flipped, cache))
                .add(&w_smooth.mul(&homfly_oracle(&smoothed, cache)))
        }
    };
    cache.insert(key, value.clone());
    value
}

/// Castle-guided engine following the coherent resolution-tree
/// construction, with fully coherent components split off as unknot
/// factors.
pub fn homfly_coherent(d: &LinkDiagram, cache: &PolyCache) -> LaurentPoly2 {
    assert!(
        d.component_count() > 0,
        "the polynomial of the empty diagram is undefined"
    );
    let trivial = d.trivial_components();
    if d.crossing_count() == 0 {
        return LaurentPoly2::unlink(trivial);
    }
    let stripped = d.remove_trivial_components();
    let p = coherent_stripped(&stripped, cache);
    p.mul(&LaurentPoly2::split_factor().pow(trivial))
}

fn coherent_stripped(d: &LinkDiagram, cache: &PolyCache) -> LaurentPoly2 {
    let key = canonical_code(d);
    if let Some(p) = cache.get(&key) {
        return p;
    }
    let s = SeifertStructure::new(d);
    let x = castle::find_appropriate_point(d, &s).expect("appropriate point exists");
    let arc = match x {
        Point::Arc(a) => a,
        Point::Trivial(_) => unreachable!("trivial components were stripped"),
    };
    let rule = rule_for(&s, s.circle_of_arc(arc));
    let value = coherent_phase(d, arc, rule, cache);
    cache.insert(key, value.clone());
    value
}

fn coherent_phase(d: &LinkDiagram, x: ArcId, rule: Rule, cache: &PolyCache) -> LaurentPoly2 {
    match walk_phase(d, x, rule, &BTreeSet::new()).outcome {
        PathOutcome::Closed => {
            // The component splits off as an unknot above or below the rest.
            let comp = d.component_of_arcs()[x];
            let (rest, _) = d.delete_components(&BTreeSet::from([comp]));
            if rest.component_count() == 0 {
                LaurentPoly2::one()
            } else {
                LaurentPoly2::split_factor().mul(&homfly_coherent(&rest, cache))
            }
        }
        PathOutcome::Violation(c) => {
            let sign = d.crossings()[c].sign;
            let (w_flip, w_smooth) = skein_weights(sign);
            // The flipped child continues the same phase with the same base
            // point; the smoothed child restarts the path there too.
            let flipped = d.flip_crossing(c).expect("violating crossing exists");
            let p_flip = coherent_phase(&flipped, x, rule, cache);
            let (smoothed, map) = d.smooth_crossing(c).expect("violating crossing exists");
            let p_smooth = match map.get(x) {
                Some(x2) => coherent_phase(&smoothed, x2, rule, cache),
                // The base component closed into a free circle.
                None => homfly_coherent(&smoothed, cache),
            };
            w_flip.mul(&p_flip).add(&w_smooth.mul(&p_smooth))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Coherent,
    Oracle,
    Both,
}

/// One-shot evaluation with fresh caches. With `Engine::Both` the two
/// engines must agree exactly.
pub fn homfly(d: &LinkDiagram, engine: Engine) -> LaurentPoly2 {
    match engine {
        Engine::Coherent => homfly_coherent(d, &PolyCache::new()),
        Engine::Oracle => homfly_oracle(d, &PolyCache::new()),
        Engine::Both => {
            let a = homfly_coherent(d, &PolyCache::new());
            let b = homfly_oracle(d, &PolyCache::new());
            assert_eq!(a, b, "engines disagree");
            a
        }
    }
}

/// A leaf of a materialized coherent resolution tree.
#[derive(Debug, Clone)]
pub struct Leaf {
    /// Crossings smoothed along the path to this leaf.
    pub smoothed: usize,
    /// Negative crossings among the smoothed ones.
    pub smoothed_negative: usize,
    pub writhe: i64,
    pub components: usize,
    /// No crossing of the leaf has both strands on one link component.
    pub all_projections_simple: bool,
}

/// A coherent resolution tree, materialized as its leaf multiset.
#[derive(Debug, Clone)]
pub struct ResolutionTree {
    pub root_writhe: i64,
    pub root_seifert_circles: usize,
    pub nodes: usize,
    pub leaves: Vec<Leaf>,
}

impl ResolutionTree {
    /// Whether a leaf contributes to the highest `a`-degree term:
    /// `ω(D) - ω(U) + #U - 1 = ω(D) + s(D) - 1`.
    pub fn leaf_contributes_to_top(&self, leaf: &Leaf) -> bool {
        leaf.components as i64 - leaf.writhe == self.root_seifert_circles as i64
    }
}

fn all_projections_simple(d: &LinkDiagram) -> bool {
    let comp_of = d.component_of_arcs();
    (0..d.crossing_count()).all(|c| {
        let under = comp_of[d.arc_at(crate::diagram::EndPoint::new(c, 0))];
        let over_slot = match d.crossings()[c].sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        };
        let over = comp_of[d.arc_at(crate::diagram::EndPoint::new(c, over_slot))];
        under != over
    })
}

struct TreeWalk {
    nodes: usize,
    leaves: Vec<Leaf>,
}

/// Builds a coherent resolution tree by the literal phase construction:
/// visited components stay in place and are excluded from later phases.
pub fn build_coherent_tree(d: &LinkDiagram) -> ResolutionTree {
    let mut walk = TreeWalk { nodes: 0, leaves: Vec::new() };
    let root_s = d.seifert_circle_count();
    tree_node(d, Vec::new(), None, 0, 0, &mut walk);
    ResolutionTree {
        root_writhe: d.writhe(),
        root_seifert_circles: root_s,
        nodes: walk.nodes,
        leaves: walk.leaves,
    }
}

/// One tree node: `visited` anchors one arc on each finished component;
/// `phase` is the current base point and rule, if a phase is running.
fn tree_node(
    d: &LinkDiagram,
    visited: Vec<ArcId>,
    phase: Option<(ArcId, Rule)>,
    smoothed: usize,
    smoothed_negative: usize,
    walk: &mut TreeWalk,
) {
    walk.nodes += 1;
    let comp_of = d.component_of_arcs();
    let visited_comps: BTreeSet<usize> = visited.iter().map(|&a| comp_of[a]).collect();

    let (x, rule) = match phase {
        Some(p) => p,
        None => {
            // Next phase: an appropriate point of the diagram with the
            // visited components removed.
            let (sub, map) = d.delete_components(&visited_comps);
            if sub.strand_components().is_empty() {
                walk.leaves.push(Leaf {
                    smoothed,
                    smoothed_negative,
                    writhe: d.writhe(),
                    components: d.component_count(),
                    all_projections_simple: all_projections_simple(d),
                });
                return;
            }
            let s_sub = SeifertStructure::new(&sub);
            let x_sub = castle::find_appropriate_point(&sub, &s_sub)
                .expect("appropriate point exists");
            let x_sub = match x_sub {
                Point::Arc(a) => a,
                Point::Trivial(_) => unreachable!("sub-diagram has strand components"),
            };
            let rule = rule_for(&s_sub, s_sub.circle_of_arc(x_sub));
            // Anchor the point back in the full diagram: any arc of the
            // merged gap works, since the gap's interior crossings all touch
            // visited components and are skipped.
            let x_full = (0..d.arc_count())
                .find(|&a| map.get(a) == Some(x_sub))
                .expect("sub arc has a source");
            (x_full, rule)
        }
    };

    match walk_phase(d, x, rule, &visited_comps).outcome {
        PathOutcome::Closed => {
            let mut visited = visited;
            visited.push(x);
            tree_node(d, visited, None, smoothed, smoothed_negative, walk);
        }
        PathOutcome::Violation(c) => {
            let sign = d.crossings()[c].sign;
            let flipped = d.flip_crossing(c).expect("crossing exists");
            tree_node(
                &flipped,
                visited.clone(),
                Some((x, rule)),
                smoothed,
                smoothed_negative,
                walk,
            );
            let (smoothed_d, map) = d.smooth_crossing(c).expect("crossing exists");
            let visited2: Vec<ArcId> = visited
                .iter()
                .map(|&a| map.get(a).expect("visited components are untouched"))
                .collect();
            let phase2 = map.get(x).map(|x2| (x2, rule));
            tree_node(
                &smoothed_d,
                visited2,
                phase2,
                smoothed + 1,
                smoothed_negative + usize::from(sign == Sign::Negative),
                walk,
            );
        }
    }
}

/// Expansion of the tree: each leaf contributes
/// `(-1)^{t'} z^{t} a^{ω(D)-ω(U)}` times the zero-crossing value of a
/// `#U`-component unlink.
pub fn homfly_from_tree(tree: &ResolutionTree) -> LaurentPoly2 {
    let mut total = LaurentPoly2::zero();
    for leaf in &tree.leaves {
        let sign = if leaf.smoothed_negative % 2 == 0 { 1 } else { -1 };
        let term = LaurentPoly2::monomial(
            tree.root_writhe - leaf.writhe,
            leaf.smoothed as i64,
            sign,
        )
        .mul(&LaurentPoly2::unlink(leaf.components));
        total = total.add(&term);
    }
    total
}
