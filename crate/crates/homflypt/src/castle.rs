//! Castles: leveled systems of Seifert-circle segments grown from a base
//! point, with brace and trap analysis.
//!
//! A castle starts with the whole circle of the base point as its level-0
//! floor and grows level by level: a circle sharing crossings with a floor of
//! level `k-1` (and carrying no floor of level `k-2`) receives a floor
//! spanning from just before the first shared crossing to just after the
//! last. Crossings joining two floors are ladders. Adjacent ladders on a
//! common floor pair frame a brace; a brace whose far side from the base
//! point contains another floor is a trap, and base points whose castle has
//! no traps are the appropriate ones every construction downstream starts
//! from.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::diagram::{ArcId, CrossingId, LinkDiagram, Point};
use crate::seifert::{MsEdge, SeifertStructure};
use crate::{Error, Result};

/// A segment of a Seifert circle: `corner_count` consecutive crossings
/// starting at `start_corner`, with the endpoints lying in the gaps just
/// outside them. A count of zero marks the crossing-free floor of a castle
/// based on a trivial circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Floor {
    pub circle: usize,
    pub level: usize,
    pub start_corner: usize,
    pub corner_count: usize,
}

impl Floor {
    /// Corner indices (on the circle) covered by the floor, in floor order.
    pub fn span_corners(&self, circle_len: usize) -> Vec<usize> {
        (0..self.corner_count)
            .map(|k| (self.start_corner + k) % circle_len)
            .collect()
    }

    pub fn covers_corner(&self, corner: usize, circle_len: usize) -> bool {
        let offset = (corner + circle_len - self.start_corner) % circle_len;
        offset < self.corner_count
    }

    /// Gap indices the floor touches, end gaps included.
    pub fn touched_gaps(&self, circle_len: usize) -> Vec<usize> {
        if self.corner_count == 0 {
            return Vec::new();
        }
        let mut gaps: Vec<usize> = (0..=self.corner_count)
            .map(|k| (self.start_corner + k) % circle_len)
            .collect();
        gaps.dedup();
        if gaps.len() > 1 && gaps.first() == gaps.last() {
            gaps.pop();
        }
        gaps
    }
}

/// A ladder with the indices of the two floors it joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ladder {
    pub crossing: CrossingId,
    pub floors: (usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct Brace {
    pub ladder_first: CrossingId,
    pub ladder_second: CrossingId,
    /// Indices into the castle floor list, lower level first.
    pub floors: (usize, usize),
    /// Floors with a point strictly inside the brace disk.
    pub inside_floors: Vec<usize>,
    pub is_trap: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Castle {
    pub base: Point,
    pub floors: Vec<Floor>,
    pub ladders: Vec<Ladder>,
}

impl Castle {
    pub fn floor_count(&self) -> usize {
        self.floors.len()
    }

    pub fn max_level(&self) -> usize {
        self.floors.iter().map(|f| f.level).max().unwrap_or(0)
    }
}

/// Builds the castle of the diagram determined by an innermost point.
pub fn build_castle(d: &LinkDiagram, s: &SeifertStructure, x: Point) -> Result<Castle> {
    build_castle_ordered(d, s, x, false)
}

/// As `build_castle`, optionally iterating parent floors and neighboring
/// circles in reversed order; the resulting floor and ladder sets do not
/// depend on the order, which the tests check by comparing both runs.
pub fn build_castle_ordered(
    d: &LinkDiagram,
    s: &SeifertStructure,
    x: Point,
    reversed: bool,
) -> Result<Castle> {
    let base_arc = match x {
        Point::Trivial(i) => {
            if i >= d.trivial_components() {
                return Err(Error::Malformed(format!("no trivial circle {i}")));
            }
            return Ok(Castle {
                base: x,
                floors: vec![Floor { circle: usize::MAX, level: 0, start_corner: 0, corner_count: 0 }],
                ladders: Vec::new(),
            });
        }
        Point::Arc(a) => a,
    };
    let base_circle = s.circle_of_arc(base_arc);
    if !s.innermost(base_circle) {
        return Err(Error::NotInnermost);
    }

    let circle_len = |c: usize| s.circles()[c].len();
    // Floor 0 covers the whole base circle starting right after the base gap.
    let start0 = s.position_in_circle(base_arc);
    let mut floors = vec![Floor {
        circle: base_circle,
        level: 0,
        start_corner: start0,
        corner_count: circle_len(base_circle),
    }];

    let mut level = 1usize;
    loop {
        let mut parents: Vec<usize> = (0..floors.len())
            .filter(|&i| floors[i].level == level - 1)
            .collect();
        if reversed {
            parents.reverse();
        }
        let mut created = Vec::new();
        for &fi in &parents {
            let parent = floors[fi].clone();
            let m = circle_len(parent.circle);
            let corners = s.corners_of_circle(d, parent.circle);
            // Mutual crossings per neighboring circle, ordered along the
            // parent from its start point.
            let mut neighbors: Vec<usize> = Vec::new();
            let mut mutual: std::collections::BTreeMap<usize, Vec<CrossingId>> =
                Default::default();
            for k in parent.span_corners(m) {
                let crossing = corners[k].crossing;
                let (p, q) = s.circles_at_crossing(crossing);
                let other = if p == parent.circle { q } else { p };
                if !neighbors.contains(&other) {
                    neighbors.push(other);
                }
                mutual.entry(other).or_default().push(crossing);
            }
            neighbors.sort_unstable();
            if reversed {
                neighbors.reverse();
            }
            for other in neighbors {
                if floors
                    .iter()
                    .chain(created.iter())
                    .any(|f: &Floor| f.circle == other && level >= 2 && f.level == level - 2)
                {
                    continue;
                }
                let shared = &mutual[&other];
                let first = shared[0];
                let last = *shared.last().unwrap();
                let corner_index = |crossing: CrossingId| {
                    s.corners_of_circle(d, other)
                        .iter()
                        .position(|c| c.crossing == crossing)
                        .expect("crossing has a corner on its other circle")
                };
                let start = corner_index(first);
                let len_other = circle_len(other);
                let count = (corner_index(last) + len_other - start) % len_other + 1;
                created.push(Floor { circle: other, level, start_corner: start, corner_count: count });
            }
        }
        if created.is_empty() {
            break;
        }
        floors.extend(created);
        level += 1;
    }

    // Ladders: crossings whose two corners both lie on floors.
    let mut ladders = Vec::new();
    for c in 0..d.crossing_count() {
        let (p, q) = s.circles_at_crossing(c);
        let corner_on = |circle: usize| {
            s.corners_of_circle(d, circle)
                .iter()
                .position(|k| k.crossing == c)
                .expect("corner exists")
        };
        for (fi, f) in floors.iter().enumerate() {
            if f.circle != p || !f.covers_corner(corner_on(p), circle_len(p)) {
                continue;
            }
            for (gi, g) in floors.iter().enumerate() {
                if g.circle != q || !g.covers_corner(corner_on(q), circle_len(q)) {
                    continue;
                }
                let (lo, hi) = if f.level <= g.level { (fi, gi) } else { (gi, fi) };
                ladders.push(Ladder { crossing: c, floors: (lo, hi) });
            }
        }
    }

    Ok(Castle { base: x, floors, ladders })
}

/// Ladders of one floor pair ordered along the lower-level floor.
fn pair_ladders(castle: &Castle, s: &SeifertStructure, d: &LinkDiagram, lo: usize, hi: usize) -> Vec<CrossingId> {
    let floor = &castle.floors[lo];
    let m = s.circles()[floor.circle].len();
    let corners = s.corners_of_circle(d, floor.circle);
    let members: BTreeSet<CrossingId> = castle
        .ladders
        .iter()
        .filter(|l| l.floors == (lo, hi))
        .map(|l| l.crossing)
        .collect();
    let mut ordered = Vec::new();
    for k in floor.span_corners(m) {
        let c = corners[k].crossing;
        if members.contains(&c) && !ordered.contains(&c) {
            ordered.push(c);
        }
    }
    ordered
}

/// Gap arcs strictly between two corners of a floor, following the floor.
fn gaps_between(
    s: &SeifertStructure,
    floor: &Floor,
    from_corner: usize,
    to_corner: usize,
) -> Vec<ArcId> {
    let circle = &s.circles()[floor.circle];
    let m = circle.len();
    let steps = (to_corner + m - from_corner) % m;
    (1..=steps).map(|k| circle[(from_corner + k) % m]).collect()
}

/// All braces of a castle, its trap evidence included.
pub fn braces(d: &LinkDiagram, s: &SeifertStructure, castle: &Castle) -> Vec<Brace> {
    let mut out = Vec::new();
    let pairs: BTreeSet<(usize, usize)> = castle.ladders.iter().map(|l| l.floors).collect();
    for (lo, hi) in pairs {
        let ordered = pair_ladders(castle, s, d, lo, hi);
        for w in ordered.windows(2) {
            let (s1, s2) = (w[0], w[1]);
            out.push(build_brace(d, s, castle, lo, hi, s1, s2));
        }
    }
    out
}

fn corner_index_on(s: &SeifertStructure, d: &LinkDiagram, circle: usize, crossing: CrossingId) -> usize {
    s.corners_of_circle(d, circle)
        .iter()
        .position(|c| c.crossing == crossing)
        .expect("corner exists")
}

fn build_brace(
    d: &LinkDiagram,
    s: &SeifertStructure,
    castle: &Castle,
    lo: usize,
    hi: usize,
    s1: CrossingId,
    s2: CrossingId,
) -> Brace {
    // The brace circle: the two ladders plus the floor segments joining them.
    let mut blocked: BTreeSet<MsEdge> = BTreeSet::from([MsEdge::Rung(s1), MsEdge::Rung(s2)]);
    for &fi in &[lo, hi] {
        let floor = &castle.floors[fi];
        let c1 = corner_index_on(s, d, floor.circle, s1);
        let c2 = corner_index_on(s, d, floor.circle, s2);
        // within the floor, one of the two ladder corners comes first
        let m = s.circles()[floor.circle].len();
        let off1 = (c1 + m - floor.start_corner) % m;
        let off2 = (c2 + m - floor.start_corner) % m;
        let (from, to) = if off1 <= off2 { (c1, c2) } else { (c2, c1) };
        for g in gaps_between(s, floor, from, to) {
            blocked.insert(MsEdge::Arc(g));
        }
    }

    let labels = s.flood_faces(d, &blocked);
    let side_count = {
        let set: BTreeSet<usize> = labels.iter().copied().collect();
        set.len()
    };
    debug_assert_eq!(side_count, 2, "a brace circle splits the sphere in two");

    let base_gap = match castle.base {
        Point::Arc(a) => a,
        Point::Trivial(_) => unreachable!("trivial castles have no braces"),
    };
    debug_assert!(!blocked.contains(&MsEdge::Arc(base_gap)));
    let outside = labels[s.ms_face_left(crate::diagram::Dart { arc: base_gap, forward: true })];

    let mut inside_floors = Vec::new();
    for (fi, floor) in castle.floors.iter().enumerate() {
        let m = s.circles()[floor.circle].len();
        let inside = floor.touched_gaps(m).into_iter().any(|gap_idx| {
            let arc = s.circles()[floor.circle][gap_idx];
            if blocked.contains(&MsEdge::Arc(arc)) {
                return false;
            }
            labels[s.ms_face_left(crate::diagram::Dart { arc, forward: true })] != outside
        });
        if inside {
            inside_floors.push(fi);
        }
    }

    Brace {
        ladder_first: s1,
        ladder_second: s2,
        floors: (lo, hi),
        is_trap: !inside_floors.is_empty(),
        inside_floors,
    }
}

pub fn has_traps(d: &LinkDiagram, s: &SeifertStructure, castle: &Castle) -> bool {
    braces(d, s, castle).iter().any(|b| b.is_trap)
}

/// Base point candidates: one per arc on each innermost circle, then one per
/// trivial circle.
pub fn candidate_base_points(d: &LinkDiagram, s: &SeifertStructure) -> Result<Vec<Point>> {
    if s.circle_count() == 0 && d.trivial_components() == 0 {
        return Err(Error::EmptyDiagram);
    }
    let mut out = Vec::new();
    for (i, circle) in s.circles().iter().enumerate() {
        if s.innermost(i) {
            out.extend(circle.iter().map(|&a| Point::Arc(a)));
        }
    }
    out.extend((0..d.trivial_components()).map(Point::Trivial));
    Ok(out)
}

/// First candidate whose castle has no traps. Such a point always exists;
/// exhausting the scan signals a kernel bug.
pub fn find_appropriate_point(d: &LinkDiagram, s: &SeifertStructure) -> Result<Point> {
    for x in candidate_base_points(d, s)? {
        let castle = build_castle(d, s, x)?;
        if !has_traps(d, s, &castle) {
            return Ok(x);
        }
    }
    Err(Error::LemmaViolation)
}

/// A maximal floor sequence with consecutive ladder sharing.
#[derive(Debug, Clone, Serialize)]
pub struct Tower {
    pub floors: Vec<usize>,
    pub coherent: bool,
}

/// All towers: paths from the level-0 floor along shared ladders, one level
/// up each step, ending at floors that share no crossing with a floor one
/// level higher.
pub fn towers(s: &SeifertStructure, castle: &Castle) -> Vec<Tower> {
    let shares = |a: usize, b: usize| {
        castle
            .ladders
            .iter()
            .any(|l| l.floors == (a.min(b), a.max(b)))
    };
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        let level = castle.floors[last].level;
        let nexts: Vec<usize> = (0..castle.floors.len())
            .filter(|&f| castle.floors[f].level == level + 1 && shares(last, f))
            .collect();
        if nexts.is_empty() {
            let coherent = path.iter().all(|&a| {
                path.iter().all(|&b| {
                    castle.floors[a].circle == usize::MAX
                        || s.coherent(castle.floors[a].circle, castle.floors[b].circle)
                })
            });
            out.push(Tower { floors: path, coherent });
            continue;
        }
        for f in nexts {
            let mut next_path = path.clone();
            next_path.push(f);
            stack.push(next_path);
        }
    }
    out
}

/// Trap-free castles have, above level zero, a unique lower-level neighbor
/// per floor; exposed for the property suite.
pub fn unique_lower_neighbors(castle: &Castle) -> bool {
    for (fi, f) in castle.floors.iter().enumerate() {
        if f.level == 0 {
            continue;
        }
        let lowers: BTreeSet<usize> = castle
            .ladders
            .iter()
            .filter(|l| l.floors.1 == fi)
            .map(|l| l.floors.0)
            .collect();
        if lowers.len() != 1 {
            return false;
        }
    }
    true
}

/// Two circles clasped at one site, with a third circle clasped to the
/// middle strand inside the lens the first clasp bounds. Base points whose
/// level-one floor wraps through the inner clasp see its floor inside a
/// brace; test fixture shared across modules.
#[cfg(test)]
pub(crate) const TRAPPED_PD: &str = r#"{"crossings":[
    {"sign":1,"arcs":[4,3,5,2]},
    {"sign":1,"arcs":[3,4,0,5]},
    {"sign":1,"arcs":[7,1,6,0]},
    {"sign":1,"arcs":[1,7,2,6]}
],"trivial_components":0}"#;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid::parse_braid;

    fn setup(word: &str) -> (LinkDiagram, SeifertStructure) {
        let d = parse_braid(word).unwrap();
        let s = SeifertStructure::new(&d);
        (d, s)
    }

    #[test]
    fn hopf_castle_two_floors_two_ladders_one_brace() {
        let (d, s) = setup("2: 1 1");
        let x = candidate_base_points(&d, &s).unwrap()[0];
        let castle = build_castle(&d, &s, x).unwrap();
        assert_eq!(castle.floors.len(), 2);
        assert_eq!(castle.ladders.len(), 2);
        let bs = braces(&d, &s, &castle);
        assert_eq!(bs.len(), 1);
        assert!(!bs[0].is_trap);
        let ts = towers(&s, &castle);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].floors.len(), 2);
        assert!(ts[0].coherent);
    }

    #[test]
    fn hopf_candidates() {
        let (d, s) = setup("2: 1 1");
        assert_eq!(candidate_base_points(&d, &s).unwrap().len(), 4);
    }

    #[test]
    fn torus35_castle_from_end_circle() {
        let (d, s) = setup("3: 1 2 1 2 1 2 1 2 1 2");
        // candidates: 5 arcs on each of the two end circles
        let candidates = candidate_base_points(&d, &s).unwrap();
        assert_eq!(candidates.len(), 10);
        let castle = build_castle(&d, &s, candidates[0]).unwrap();
        assert_eq!(castle.floors.len(), 3);
        let mut levels: Vec<usize> = castle.floors.iter().map(|f| f.level).collect();
        levels.sort_unstable();
        assert_eq!(levels, vec![0, 1, 2]);
        // The level-1 floor runs from the first to the last crossing shared
        // with the base circle, so one middle-circle corner stays outside it
        // and one crossing of the outer pair is not a ladder: 5 + 4.
        assert_eq!(castle.ladders.len(), 9);
        let bs = braces(&d, &s, &castle);
        assert_eq!(bs.len(), 7);
        assert!(bs.iter().all(|b| !b.is_trap));
        let ts = towers(&s, &castle);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].floors.len(), 3);
        assert!(ts[0].coherent);
        assert!(unique_lower_neighbors(&castle));
    }

    #[test]
    fn zero_crossing_castle() {
        let d = LinkDiagram::new(Vec::new(), Vec::new(), 1).unwrap();
        let s = SeifertStructure::new(&d);
        let candidates = candidate_base_points(&d, &s).unwrap();
        assert_eq!(candidates.len(), 1);
        let castle = build_castle(&d, &s, candidates[0]).unwrap();
        assert_eq!(castle.floors.len(), 1);
        assert!(castle.ladders.is_empty());
    }

    #[test]
    fn trap_fixture_and_derived_point() {
        let d = crate::parse_pd(TRAPPED_PD).unwrap();
        let s = SeifertStructure::new(&d);
        let mut trapped = Vec::new();
        let mut free = Vec::new();
        for x in candidate_base_points(&d, &s).unwrap() {
            let castle = build_castle(&d, &s, x).unwrap();
            if has_traps(&d, &s, &castle) {
                trapped.push(x);
            } else {
                free.push(x);
            }
        }
        assert!(!trapped.is_empty(), "the fixture has trapped base points");
        assert!(!free.is_empty(), "and appropriate ones");
        let x = find_appropriate_point(&d, &s).unwrap();
        assert!(free.contains(&x));
    }

    #[test]
    fn castle_is_order_independent_as_a_set() {
        for word in ["2: 1 1", "3: 1 2 1 2 1 2 1 2 1 2", "3: 1 2 2 1", "4: 1 2 3 2 1 3"] {
            let (d, s) = setup(word);
            for x in candidate_base_points(&d, &s).unwrap() {
                let forward = build_castle(&d, &s, x).unwrap();
                let reversed = build_castle_ordered(&d, &s, x, true).unwrap();
                let norm = |c: &Castle| {
                    let mut floors: Vec<Floor> = c.floors.clone();
                    floors.sort_by_key(|f| (f.circle, f.level, f.start_corner, f.corner_count));
                    let mut ladders: Vec<(CrossingId, Floor, Floor)> = c
                        .ladders
                        .iter()
                        .map(|l| {
                            (
                                l.crossing,
                                c.floors[l.floors.0].clone(),
                                c.floors[l.floors.1].clone(),
                            )
                        })
                        .collect();
                    ladders.sort_by_key(|(cr, f, g)| {
                        (*cr, f.circle, f.start_corner, g.circle, g.start_corner)
                    });
                    (floors, ladders)
                };
                assert_eq!(norm(&forward), norm(&reversed), "{word} {x:?}");
            }
        }
        let d = crate::parse_pd(TRAPPED_PD).unwrap();
        let s = SeifertStructure::new(&d);
        for x in candidate_base_points(&d, &s).unwrap() {
            let a = build_castle(&d, &s, x).unwrap();
            let b = build_castle_ordered(&d, &s, x, true).unwrap();
            assert_eq!(a.floors.len(), b.floors.len());
            assert_eq!(a.ladders.len(), b.ladders.len());
        }
    }

    #[test]
    fn ladders_join_floors_of_odd_level_difference() {
        let mut diagrams: Vec<LinkDiagram> = ["2: 1 1", "3: 1 2 1 2 1 2 1 2 1 2", "4: 1 2 3 2 1 3", "3: 1 -2 1 -2"]
            .iter()
            .map(|w| parse_braid(w).unwrap())
            .collect();
        diagrams.push(crate::parse_pd(TRAPPED_PD).unwrap());
        for d in &diagrams {
            let s = SeifertStructure::new(d);
            for x in candidate_base_points(d, &s).unwrap() {
                let castle = build_castle(d, &s, x).unwrap();
                for l in &castle.ladders {
                    let diff = castle.floors[l.floors.1].level - castle.floors[l.floors.0].level;
                    assert_eq!(diff % 2, 1, "ladder {l:?}");
                }
            }
        }
    }

    #[test]
    fn braid_closures_are_trap_free() {
        for word in ["3: 1 2 2 1", "3: 2 1 1 2", "3: 1 2 1 2", "4: 1 2 2 3 3 1"] {
            let (d, s) = setup(word);
            for x in candidate_base_points(&d, &s).unwrap() {
                let castle = build_castle(&d, &s, x).unwrap();
                assert!(!has_traps(&d, &s, &castle), "{word} {x:?}");
            }
        }
    }

    #[test]
    fn not_innermost_is_rejected() {
        let (d, s) = setup("3: 1 2 1 2 1 2 1 2 1 2");
        let middle = (0..s.circle_count()).find(|&i| !s.innermost(i)).unwrap();
        let arc = s.circles()[middle][0];
        assert!(matches!(
            build_castle(&d, &s, Point::Arc(arc)),
            Err(Error::NotInnermost)
        ));
    }

    #[test]
    fn appropriate_point_exists_across_corpus() {
        for word in [
            "2: 1 1",
            "3: 1 2",
            "3: 1 2 1 2 1 2 1 2 1 2",
            "3: 1 2 2 1",
            "4: 1 2 3 2 1 3",
            "3: 1 -2 1 -2",
            "4: 1 1 3 3",
        ] {
            let (d, s) = setup(word);
            find_appropriate_point(&d, &s).unwrap();
        }
    }
}
