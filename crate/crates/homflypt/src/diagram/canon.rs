//! Canonical labeling of diagrams, deciding isomorphism up to
//! orientation-preserving homeomorphisms of the sphere.
//!
//! Each map component is relabeled breadth-first from every possible start
//! arc and the lexicographically smallest encoding wins. Components are then
//! sorted by their codes. Two diagrams are isomorphic exactly when their
//! codes agree, and the code doubles as the memoization key for the
//! polynomial caches.

use std::collections::HashMap;

use super::{ArcId, CrossingId, LinkDiagram, Sign};

/// Canonical encoding plus the relabeling that realizes it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub code: Vec<i64>,
    /// Concrete arc for each canonical arc label.
    pub arc_map: Vec<ArcId>,
    /// Concrete crossing for each canonical crossing label.
    pub crossing_map: Vec<CrossingId>,
}

/// Encoding of one component relabeled from `start`: for each crossing in
/// discovery order, its sign bit followed by the four slot arc labels.
fn encode_from(
    d: &LinkDiagram,
    start: ArcId,
) -> (Vec<i64>, Vec<ArcId>, Vec<CrossingId>) {
    let mut arc_label: HashMap<ArcId, usize> = HashMap::new();
    let mut cross_label: HashMap<CrossingId, usize> = HashMap::new();
    let mut arc_order: Vec<ArcId> = Vec::new();
    let mut cross_order: Vec<CrossingId> = Vec::new();
    let mut code = Vec::new();

    arc_label.insert(start, 0);
    arc_order.push(start);
    let c0 = d.arcs()[start].head.crossing;
    cross_label.insert(c0, 0);
    cross_order.push(c0);

    let mut i = 0;
    while i < cross_order.len() {
        let c = cross_order[i];
        i += 1;
        let crossing = &d.crossings()[c];
        code.push(match crossing.sign {
            Sign::Positive => 1,
            Sign::Negative => 0,
        });
        for slot in 0..4 {
            let a = crossing.slots[slot];
            let label = *arc_label.entry(a).or_insert_with(|| {
                arc_order.push(a);
                arc_order.len() - 1
            });
            code.push(label as i64);
            for end in [d.arcs()[a].tail, d.arcs()[a].head] {
                if let std::collections::hash_map::Entry::Vacant(e) = cross_label.entry(end.crossing) {
                    e.insert(cross_order.len());
                    cross_order.push(end.crossing);
                }
            }
        }
    }
    (code, arc_order, cross_order)
}

type Encoding = (Vec<i64>, Vec<ArcId>, Vec<CrossingId>);

/// Canonical form of a whole diagram.
pub fn canonical_form(d: &LinkDiagram) -> CanonicalForm {
    let comp_of = d.map_components();
    let n_comp = comp_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut per_comp: Vec<Option<Encoding>> = vec![None; n_comp];
    for start in 0..d.arc_count() {
        let comp = comp_of[d.arcs()[start].tail.crossing];
        let cand = encode_from(d, start);
        let better = match &per_comp[comp] {
            None => true,
            Some((best, _, _)) => cand.0 < *best,
        };
        if better {
            per_comp[comp] = Some(cand);
        }
    }
    let mut comps: Vec<Encoding> =
        per_comp.into_iter().map(|c| c.expect("component has arcs")).collect();
    comps.sort_by(|a, b| a.0.cmp(&b.0));

    let mut code = Vec::new();
    let mut arc_map = Vec::new();
    let mut crossing_map = Vec::new();
    for (c, arcs, crossings) in comps {
        code.push(-1);
        code.extend(c);
        arc_map.extend(arcs);
        crossing_map.extend(crossings);
    }
    code.push(-2);
    code.push(d.trivial_components() as i64);
    CanonicalForm { code, arc_map, crossing_map }
}

/// Canonical code alone, the isomorphism class key.
pub fn canonical_code(d: &LinkDiagram) -> Vec<i64> {
    canonical_form(d).code
}

/// True when an orientation-preserving sphere homeomorphism carries one
/// diagram to the other, matching signs, over/under data, orientations, and
/// trivial component counts.
pub fn diagrams_isomorphic(d1: &LinkDiagram, d2: &LinkDiagram) -> bool {
    if d1.crossing_count() != d2.crossing_count()
        || d1.arc_count() != d2.arc_count()
        || d1.trivial_components() != d2.trivial_components()
    {
        return false;
    }
    canonical_code(d1) == canonical_code(d2)
}
