//! Seifert circles, the Seifert graph, and the circle nesting structure.
//!
//! Smoothing every crossing of a diagram leaves disjoint circles on the
//! sphere, joined by one band per crossing. This module works in the map of
//! that smoothed picture: each crossing contributes two trivalent corner
//! vertices joined by a rung edge, and each diagram arc survives as an edge
//! between corners. Faces of that map, merged across rungs, are exactly the
//! complementary regions of the circle family; regions and circles form a
//! tree, which yields each circle's left and right side sets, looseness and
//! innermost flags, and the coherence relation between circles.
//!
//! Circle components with no crossings stay outside this structure: their
//! placement never affects anything computed downstream, so they are treated
//! as living in a far-away region and are ignored by side sets.
//!
//! For diagrams whose 4-valent map is disconnected, the rotation data does
//! not fix how the pieces nest, and nothing that matters (the polynomial,
//! the degree bounds, sharpness) depends on it. The pieces are placed side
//! by side: one deterministically chosen outer region per piece, all glued
//! into a common ocean.

use std::collections::BTreeSet;

use crate::diagram::{ArcId, CrossingId, Dart, LinkDiagram, Sign};

/// A corner vertex of the smoothed-picture map: the passage of a Seifert
/// circle through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub crossing: CrossingId,
    /// Incoming slot of the smoothing channel (0, or 3 for positive / 1 for
    /// negative crossings).
    pub in_slot: u8,
}

/// An edge of the smoothed-picture map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MsEdge {
    Arc(ArcId),
    Rung(CrossingId),
}

/// Darts of the smoothed-picture map: arc darts keep their diagram identity,
/// rung darts point from the under-in corner (`forward`) or back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsDart {
    Arc(Dart),
    Rung { crossing: CrossingId, forward: bool },
}

impl MsDart {
    fn reversed(self) -> Self {
        match self {
            MsDart::Arc(d) => MsDart::Arc(d.reversed()),
            MsDart::Rung { crossing, forward } => MsDart::Rung { crossing, forward: !forward },
        }
    }

    pub fn edge(self) -> MsEdge {
        match self {
            MsDart::Arc(d) => MsEdge::Arc(d.arc),
            MsDart::Rung { crossing, .. } => MsEdge::Rung(crossing),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeifertStructure {
    circles: Vec<Vec<ArcId>>,
    circle_of_arc: Vec<usize>,
    pos_in_circle: Vec<usize>,
    /// The two circles at each crossing: (under-in channel, other channel).
    crossing_circles: Vec<(usize, usize)>,
    graph_multiplicity: Vec<Vec<usize>>,
    ms_face_of: Vec<usize>,
    ms_face_count: usize,
    region_of_face: Vec<usize>,
    region_count: usize,
    left_region: Vec<usize>,
    right_region: Vec<usize>,
    left_sets: Vec<BTreeSet<usize>>,
    right_sets: Vec<BTreeSet<usize>>,
    arc_dart_count: usize,
    /// One face per piece of a split map, all lying in the shared ocean.
    ocean_faces: Vec<usize>,
}

impl SeifertStructure {
    pub fn new(d: &LinkDiagram) -> Self {
        let circles = d.seifert_cycles();
        let mut circle_of_arc = vec![usize::MAX; d.arc_count()];
        let mut pos_in_circle = vec![usize::MAX; d.arc_count()];
        for (i, circle) in circles.iter().enumerate() {
            for (k, &a) in circle.iter().enumerate() {
                circle_of_arc[a] = i;
                pos_in_circle[a] = k;
            }
        }

        let crossing_circles: Vec<(usize, usize)> = d
            .crossings()
            .iter()
            .enumerate()
            .map(|(c, cr)| {
                let under = circle_of_arc[d.arc_at(crate::diagram::EndPoint::new(c, 0))];
                let other_slot = match cr.sign {
                    Sign::Positive => 3,
                    Sign::Negative => 1,
                };
                let other = circle_of_arc[d.arc_at(crate::diagram::EndPoint::new(c, other_slot))];
                assert_ne!(under, other, "the two smoothing channels lie on distinct circles");
                (under, other)
            })
            .collect();

        let mut graph_multiplicity = vec![vec![0usize; circles.len()]; circles.len()];
        for &(p, q) in &crossing_circles {
            graph_multiplicity[p][q] += 1;
            graph_multiplicity[q][p] += 1;
        }

        let mut s = SeifertStructure {
            circles,
            circle_of_arc,
            pos_in_circle,
            crossing_circles,
            graph_multiplicity,
            ms_face_of: Vec::new(),
            ms_face_count: 0,
            region_of_face: Vec::new(),
            region_count: 0,
            left_region: Vec::new(),
            right_region: Vec::new(),
            left_sets: Vec::new(),
            right_sets: Vec::new(),
            arc_dart_count: d.arc_count() * 2,
            ocean_faces: Vec::new(),
        };
        s.build_ms_faces(d);
        s.build_regions(d);
        s.build_side_sets();
        debug_assert!(s.is_bipartite());
        s
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circles(&self) -> &[Vec<ArcId>] {
        &self.circles
    }

    pub fn circle_of_arc(&self, a: ArcId) -> usize {
        self.circle_of_arc[a]
    }

    pub fn position_in_circle(&self, a: ArcId) -> usize {
        self.pos_in_circle[a]
    }

    pub fn circles_at_crossing(&self, c: CrossingId) -> (usize, usize) {
        self.crossing_circles[c]
    }

    /// Number of crossings joining two circles: the edge multiplicity in the
    /// Seifert graph.
    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.graph_multiplicity[i][j]
    }

    /// The Seifert graph is always two-colorable; exposed for property
    /// checks.
    pub fn is_bipartite(&self) -> bool {
        let n = self.circles.len();
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if self.graph_multiplicity[i][j] == 0 {
                        continue;
                    }
                    if color[j] == u8::MAX {
                        color[j] = 1 - color[i];
                        stack.push(j);
                    } else if color[j] == color[i] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The corner a circle makes at the head of arc `a`.
    pub fn corner_at_arc_head(&self, d: &LinkDiagram, a: ArcId) -> Corner {
        let head = d.arcs()[a].head;
        Corner { crossing: head.crossing, in_slot: head.slot }
    }

    /// Corners of circle `i` in circle order: corner `k` lies between arcs
    /// `k` and `k+1` of the circle.
    pub fn corners_of_circle(&self, d: &LinkDiagram, i: usize) -> Vec<Corner> {
        self.circles[i]
            .iter()
            .map(|&a| self.corner_at_arc_head(d, a))
            .collect()
    }

    fn ms_dart_index(&self, m: MsDart) -> usize {
        match m {
            MsDart::Arc(d) => d.index(),
            MsDart::Rung { crossing, forward } => {
                self.arc_dart_count + crossing * 2 + usize::from(!forward)
            }
        }
    }

    /// Three away-darts of a corner in counterclockwise order.
    fn corner_ports(&self, d: &LinkDiagram, corner: Corner) -> [MsDart; 3] {
        let c = corner.crossing;
        let sign = d.crossings()[c].sign;
        let out_slot = crate::diagram::seifert_out_slot(sign, corner.in_slot);
        let in_arc = d.arc_at(crate::diagram::EndPoint::new(c, corner.in_slot));
        let out_arc = d.arc_at(crate::diagram::EndPoint::new(c, out_slot));
        let in_away = MsDart::Arc(Dart { arc: in_arc, forward: false });
        let out_away = MsDart::Arc(Dart { arc: out_arc, forward: true });
        let rung_away = MsDart::Rung { crossing: c, forward: corner.in_slot == 0 };
        // Counterclockwise orders read off the local geometry of the two
        // smoothing channels.
        match (sign, corner.in_slot) {
            (Sign::Positive, 0) => [in_away, out_away, rung_away],
            (Sign::Positive, 3) => [in_away, rung_away, out_away],
            (Sign::Negative, 0) => [in_away, rung_away, out_away],
            (Sign::Negative, 1) => [in_away, out_away, rung_away],
            _ => unreachable!("not a smoothing channel"),
        }
    }

    fn build_ms_faces(&mut self, d: &LinkDiagram) {
        let n_darts = self.arc_dart_count + d.crossing_count() * 2;
        let mut next = vec![usize::MAX; n_darts];
        // next-in-face: arrive at a corner port, continue on the
        // counterclockwise-previous port.
        for c in 0..d.crossing_count() {
            let sign = d.crossings()[c].sign;
            for in_slot in crate::diagram::in_slots(sign) {
                let ports = self.corner_ports(d, Corner { crossing: c, in_slot });
                for p in 0..3 {
                    let arrival = ports[p].reversed();
                    let cont = ports[(p + 2) % 3];
                    next[self.ms_dart_index(arrival)] = self.ms_dart_index(cont);
                }
            }
        }
        let mut face_of = vec![usize::MAX; n_darts];
        let mut count = 0;
        for start in 0..n_darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut dart = start;
            while face_of[dart] == usize::MAX {
                face_of[dart] = count;
                dart = next[dart];
            }
            count += 1;
        }
        self.ms_face_of = face_of;
        self.ms_face_count = count;
    }

    /// Face on the left of an arc dart in the smoothed picture.
    pub fn ms_face_left(&self, dart: Dart) -> usize {
        self.ms_face_of[dart.index()]
    }

    fn ms_face_left_rung(&self, crossing: CrossingId, forward: bool) -> usize {
        self.ms_face_of[self.arc_dart_count + crossing * 2 + usize::from(!forward)]
    }

    pub fn ms_face_count(&self) -> usize {
        self.ms_face_count
    }

    /// All edges of the smoothed-picture map.
    pub fn ms_edges(&self, d: &LinkDiagram) -> Vec<MsEdge> {
        (0..d.arc_count())
            .map(MsEdge::Arc)
            .chain((0..d.crossing_count()).map(MsEdge::Rung))
            .collect()
    }

    /// The two faces flanking an edge of the smoothed picture.
    pub fn ms_edge_faces(&self, e: MsEdge) -> (usize, usize) {
        match e {
            MsEdge::Arc(a) => (
                self.ms_face_left(Dart { arc: a, forward: true }),
                self.ms_face_left(Dart { arc: a, forward: false }),
            ),
            MsEdge::Rung(c) => (
                self.ms_face_left_rung(c, true),
                self.ms_face_left_rung(c, false),
            ),
        }
    }

    /// Components of the smoothed-picture faces after removing the given
    /// edges from the adjacency; used to split the sphere along a cycle.
    /// The ocean identifications of a split map always stay connected.
    pub fn flood_faces(&self, d: &LinkDiagram, blocked: &BTreeSet<MsEdge>) -> Vec<usize> {
        let mut uf = UnionFind::new(self.ms_face_count);
        for e in self.ms_edges(d) {
            if blocked.contains(&e) {
                continue;
            }
            let (f, g) = self.ms_edge_faces(e);
            uf.union(f, g);
        }
        for pair in self.ocean_faces.windows(2) {
            uf.union(pair[0], pair[1]);
        }
        uf.labels()
    }

    fn build_regions(&mut self, d: &LinkDiagram) {
        let mut uf = UnionFind::new(self.ms_face_count);
        for c in 0..d.crossing_count() {
            let (f, g) = self.ms_edge_faces(MsEdge::Rung(c));
            uf.union(f, g);
        }
        // Glue the pieces of a split map side by side: one outer region per
        // piece, all identified. Deterministic choice: the region of each
        // piece with the smallest representative face.
        let comp_of = d.map_components();
        let n_comp = comp_of.iter().copied().max().map_or(0, |m| m + 1);
        if n_comp > 1 {
            let mut outer: Vec<Option<usize>> = vec![None; n_comp];
            for a in 0..d.arc_count() {
                let comp = comp_of[d.arcs()[a].tail.crossing];
                for fwd in [true, false] {
                    let f = uf.find(self.ms_face_left(Dart { arc: a, forward: fwd }));
                    if outer[comp].is_none_or(|o| f < o) {
                        outer[comp] = Some(f);
                    }
                }
            }
            self.ocean_faces = outer.iter().map(|o| o.expect("piece has faces")).collect();
            let first = self.ocean_faces[0];
            for &o in &self.ocean_faces {
                uf.union(first, o);
            }
        }
        self.region_of_face = uf.labels();
        self.region_count = self
            .region_of_face
            .iter()
            .copied()
            .max()
            .map_or(0, |m| m + 1);

        self.left_region = Vec::with_capacity(self.circles.len());
        self.right_region = Vec::with_capacity(self.circles.len());
        for circle in &self.circles {
            let l = self.region_of_face[self.ms_face_left(Dart { arc: circle[0], forward: true })];
            let r =
                self.region_of_face[self.ms_face_left(Dart { arc: circle[0], forward: false })];
            for &a in circle {
                debug_assert_eq!(
                    self.region_of_face[self.ms_face_left(Dart { arc: a, forward: true })],
                    l,
                    "left side of a circle is one region"
                );
                debug_assert_eq!(
                    self.region_of_face[self.ms_face_left(Dart { arc: a, forward: false })],
                    r,
                );
            }
            self.left_region.push(l);
            self.right_region.push(r);
        }
        if !self.circles.is_empty() {
            assert_eq!(
                self.region_count,
                self.circles.len() + 1,
                "regions and circles form a tree"
            );
        }
    }

    fn build_side_sets(&mut self) {
        let n = self.circles.len();
        self.left_sets = vec![BTreeSet::new(); n];
        self.right_sets = vec![BTreeSet::new(); n];
        if n == 0 {
            return;
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.region_count];
        for c in 0..n {
            adj[self.left_region[c]].push((self.right_region[c], c));
            adj[self.right_region[c]].push((self.left_region[c], c));
        }
        for c in 0..n {
            // circles reachable from the left region without crossing c
            let mut seen_regions = vec![false; self.region_count];
            let mut seen_circles = vec![false; n];
            seen_regions[self.left_region[c]] = true;
            let mut stack = vec![self.left_region[c]];
            while let Some(r) = stack.pop() {
                for &(r2, c2) in &adj[r] {
                    if c2 == c {
                        continue;
                    }
                    seen_circles[c2] = true;
                    if !seen_regions[r2] {
                        seen_regions[r2] = true;
                        stack.push(r2);
                    }
                }
            }
            for (other, seen) in seen_circles.iter().enumerate() {
                if other == c {
                    continue;
                }
                if *seen {
                    self.left_sets[c].insert(other);
                } else {
                    self.right_sets[c].insert(other);
                }
            }
        }
    }

    pub fn left_set(&self, i: usize) -> &BTreeSet<usize> {
        &self.left_sets[i]
    }

    pub fn right_set(&self, i: usize) -> &BTreeSet<usize> {
        &self.right_sets[i]
    }

    pub fn loose_left(&self, i: usize) -> bool {
        self.left_sets[i].is_empty()
    }

    pub fn loose_right(&self, i: usize) -> bool {
        self.right_sets[i].is_empty()
    }

    pub fn innermost(&self, i: usize) -> bool {
        self.loose_left(i) || self.loose_right(i)
    }

    /// Two circles are coherent when they are homologous in the annulus they
    /// bound: exactly one of them sees the other on its left.
    pub fn coherent(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        self.left_sets[i].contains(&j) != self.left_sets[j].contains(&i)
    }

    /// Distances from `start` in the Seifert graph; unreachable circles get
    /// `usize::MAX`.
    pub fn graph_distances(&self, start: usize) -> Vec<usize> {
        let n = self.circles.len();
        let mut dist = vec![usize::MAX; n];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if self.graph_multiplicity[i][j] > 0 && dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        dist
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    /// Dense labels per element, numbered by smallest member.
    fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            let r = self.find(i);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[i] = label[r];
        }
        label
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid::parse_braid;

    #[test]
    fn torus35_graph_is_a_path_with_multiplicities() {
        let t = parse_braid("3: 1 2 1 2 1 2 1 2 1 2").unwrap();
        let s = SeifertStructure::new(&t);
        assert_eq!(s.circle_count(), 3);
        let mut mults: Vec<usize> = Vec::new();
        for i in 0..3 {
            for j in (i + 1)..3 {
                if s.multiplicity(i, j) > 0 {
                    mults.push(s.multiplicity(i, j));
                }
            }
        }
        mults.sort_unstable();
        assert_eq!(mults, vec![5, 5]);
        // path: exactly two circles with an empty side
        let empty_sides = (0..3).filter(|&i| s.innermost(i)).count();
        assert_eq!(empty_sides, 2);
        // the middle circle is nested
        assert!((0..3).any(|i| !s.left_set(i).is_empty() && !s.right_set(i).is_empty()));
    }

    #[test]
    fn hopf_circles_both_innermost() {
        let h = parse_braid("2: 1 1").unwrap();
        let s = SeifertStructure::new(&h);
        assert_eq!(s.circle_count(), 2);
        assert_eq!(s.multiplicity(0, 1), 2);
        assert!(s.innermost(0) && s.innermost(1));
        assert!(s.loose_left(0) || s.loose_right(0));
        assert!(s.coherent(0, 1));
    }

    #[test]
    fn closed_braids_have_exactly_two_empty_sides() {
        for word in ["3: 1 2", "4: 1 2 3 2 1", "3: 1 2 1 2", "4: 1 1 3 3 2"] {
            let d = parse_braid(word).unwrap();
            let s = SeifertStructure::new(&d);
            let empty = (0..s.circle_count())
                .filter(|&i| s.loose_left(i) || s.loose_right(i))
                .count();
            assert_eq!(empty, 2, "word {word}");
        }
    }

    #[test]
    fn side_sets_partition() {
        let d = parse_braid("4: 1 2 3 1 -2 3").unwrap();
        let s = SeifertStructure::new(&d);
        for i in 0..s.circle_count() {
            assert_eq!(
                s.left_set(i).len() + s.right_set(i).len(),
                s.circle_count() - 1
            );
            assert!(s.left_set(i).is_disjoint(s.right_set(i)));
        }
    }

    #[test]
    fn bipartite_on_mixed_words() {
        for word in ["2: 1 1", "3: 1 -2 1 2", "4: 1 2 3 -1 -2 -3", "3: 1 1 1 2 2 2"] {
            let s = SeifertStructure::new(&parse_braid(word).unwrap());
            assert!(s.is_bipartite());
        }
    }

    #[test]
    fn adjacent_strand_circles_are_coherent() {
        let t = parse_braid("3: 1 2 1 2 1 2 1 2 1 2").unwrap();
        let s = SeifertStructure::new(&t);
        for i in 0..3 {
            for j in 0..3 {
                if i != j && s.multiplicity(i, j) > 0 {
                    assert!(s.coherent(i, j));
                }
            }
        }
    }

    #[test]
    fn split_map_regions_form_a_tree() {
        // two clasped pairs on disjoint strand pairs
        let d = parse_braid("4: 1 1 3 3").unwrap();
        let s = SeifertStructure::new(&d);
        assert_eq!(s.circle_count(), 4);
        for i in 0..4 {
            assert_eq!(
                s.left_set(i).len() + s.right_set(i).len(),
                3,
                "global side sets cover the other circles"
            );
        }
    }
}
