//! Oriented link diagrams on the two-sphere as combinatorial maps.
//!
//! A diagram is a list of crossings and a list of directed arcs. Each
//! crossing stores its sign and the four arc ends around it in a fixed
//! counterclockwise order starting at the incoming under-strand; this
//! rotation system encodes the sphere embedding. Circle components with no
//! crossings are kept as a bare counter.
//!
//! Slot layout, counterclockwise from the incoming under-strand:
//!
//! * positive: `0` under-in, `1` over-out, `2` under-out, `3` over-in
//! * negative: `0` under-in, `1` over-in, `2` under-out, `3` over-out
//!
//! The strand continues `0→2` (under) and `3→1` / `1→3` (over); the oriented
//! smoothing connects `0→1, 3→2` at a positive crossing and `0→3, 1→2` at a
//! negative one.
//!
//! Diagrams are immutable; every operation returns a new value, so they can
//! be shared freely across threads.

pub mod braid;
pub mod canon;
pub mod pd;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type CrossingId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One of the four arc-end positions at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndPoint {
    pub crossing: CrossingId,
    pub slot: u8,
}

impl EndPoint {
    pub fn new(crossing: CrossingId, slot: u8) -> Self {
        Self { crossing, slot }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub sign: Sign,
    /// Arc occupying each slot, counterclockwise from the incoming under-strand.
    pub slots: [ArcId; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: EndPoint,
    pub head: EndPoint,
}

/// A combinatorially addressed point of the diagram: either the gap at the
/// tail of an arc, or one of the crossing-free circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Point {
    Arc(ArcId),
    Trivial(usize),
}

/// Whether a slot receives or emits its arc.
pub fn slot_is_incoming(sign: Sign, slot: u8) -> bool {
    match sign {
        Sign::Positive => slot == 0 || slot == 3,
        Sign::Negative => slot == 0 || slot == 1,
    }
}

/// Slot where the strand entering at `slot` leaves the crossing.
pub fn strand_out_slot(sign: Sign, slot: u8) -> u8 {
    match (sign, slot) {
        (_, 0) => 2,
        (Sign::Positive, 3) => 1,
        (Sign::Negative, 1) => 3,
        _ => panic!("not an incoming slot"),
    }
}

/// Slot where the oriented smoothing sends the strand entering at `slot`.
pub fn seifert_out_slot(sign: Sign, slot: u8) -> u8 {
    match (sign, slot) {
        (Sign::Positive, 0) => 1,
        (Sign::Positive, 3) => 2,
        (Sign::Negative, 0) => 3,
        (Sign::Negative, 1) => 2,
        _ => panic!("not an incoming slot"),
    }
}

/// Incoming slots in a fixed order: under-in first, then over-in.
pub fn in_slots(sign: Sign) -> [u8; 2] {
    match sign {
        Sign::Positive => [0, 3],
        Sign::Negative => [0, 1],
    }
}

/// A directed side of an arc. Forward darts run tail to head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub arc: ArcId,
    pub forward: bool,
}

impl Dart {
    pub fn index(self) -> usize {
        self.arc * 2 + usize::from(!self.forward)
    }

    pub fn from_index(i: usize) -> Self {
        Dart { arc: i / 2, forward: i.is_multiple_of(2) }
    }

    pub fn reversed(self) -> Self {
        Dart { arc: self.arc, forward: !self.forward }
    }
}

/// Faces of the 4-valent map, one orbit per face, traversed with the face on
/// the left of every dart.
#[derive(Debug, Clone)]
pub struct FaceStructure {
    pub faces: Vec<Vec<Dart>>,
    face_of: Vec<usize>,
}

impl FaceStructure {
    pub fn face_left_of(&self, d: Dart) -> usize {
        self.face_of[d.index()]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    arcs: Vec<Arc>,
    trivial_components: usize,
}

/// Result of rewiring arcs through removed crossings: where each old arc
/// went, if anywhere.
#[derive(Debug, Clone)]
pub struct ArcMap {
    map: Vec<Option<ArcId>>,
}

impl ArcMap {
    pub fn get(&self, old: ArcId) -> Option<ArcId> {
        self.map[old]
    }

    pub fn identity(n: usize) -> Self {
        ArcMap { map: (0..n).map(Some).collect() }
    }
}

impl LinkDiagram {
    /// Builds a diagram and checks the map invariants.
    pub fn new(crossings: Vec<Crossing>, arcs: Vec<Arc>, trivial_components: usize) -> Result<Self> {
        let d = LinkDiagram { crossings, arcs, trivial_components };
        d.validate()?;
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn trivial_components(&self) -> usize {
        self.trivial_components
    }

    pub fn with_trivial_components(&self, n: usize) -> Self {
        let mut d = self.clone();
        d.trivial_components = n;
        d
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.crossings.iter().all(|c| c.sign == Sign::Positive)
    }

    /// Arc occupying `(crossing, slot)`.
    pub fn arc_at(&self, end: EndPoint) -> ArcId {
        self.crossings[end.crossing].slots[end.slot as usize]
    }

    fn check_slot_tables(&self) -> Result<()> {
        for (ci, c) in self.crossings.iter().enumerate() {
            for slot in 0..4u8 {
                let a = c.slots[slot as usize];
                if a >= self.arcs.len() {
                    return Err(Error::Malformed(format!(
                        "crossing {ci} slot {slot} references missing arc {a}"
                    )));
                }
                let end = EndPoint::new(ci, slot);
                let arc = self.arcs[a];
                let ok = if slot_is_incoming(c.sign, slot) {
                    arc.head == end
                } else {
                    arc.tail == end
                };
                if !ok {
                    return Err(Error::Malformed(format!(
                        "crossing {ci} slot {slot}: arc {a} does not match its endpoint"
                    )));
                }
            }
        }
        for (ai, arc) in self.arcs.iter().enumerate() {
            for (end, incoming) in [(arc.tail, false), (arc.head, true)] {
                if end.crossing >= self.crossings.len() {
                    return Err(Error::Malformed(format!("arc {ai} dangles")));
                }
                let c = &self.crossings[end.crossing];
                if c.slots[end.slot as usize] != ai
                    || slot_is_incoming(c.sign, end.slot) != incoming
                {
                    return Err(Error::Malformed(format!(
                        "arc {ai} endpoint does not match the slot table"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks the two-in-two-out slot structure and that each map component
    /// embeds in the sphere (`V - E + F = 2` component-wise).
    pub fn validate(&self) -> Result<()> {
        self.check_slot_tables()?;
        if self.crossings.is_empty() {
            return Ok(());
        }
        let faces = self.faces();
        let comp = self.map_components();
        let n_comp = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut v = vec![0i64; n_comp];
        let mut e = vec![0i64; n_comp];
        let mut f = vec![0i64; n_comp];
        for ci in 0..self.crossings.len() {
            v[comp[ci]] += 1;
        }
        for arc in &self.arcs {
            e[comp[arc.tail.crossing]] += 1;
        }
        for face in &faces.faces {
            f[comp[self.arcs[face[0].arc].tail.crossing]] += 1;
        }
        for i in 0..n_comp {
            if v[i] - e[i] + f[i] != 2 {
                return Err(Error::NonSpherical {
                    euler: v[i] - e[i] + f[i],
                });
            }
        }
        Ok(())
    }

    /// Connected components of the underlying 4-valent graph, labelled per
    /// crossing.
    pub fn map_components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.crossings.len()];
        let mut next = 0;
        for start in 0..self.crossings.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(c) = stack.pop() {
                for slot in 0..4u8 {
                    let a = self.crossings[c].slots[slot as usize];
                    for end in [self.arcs[a].tail, self.arcs[a].head] {
                        if comp[end.crossing] == usize::MAX {
                            comp[end.crossing] = next;
                            stack.push(end.crossing);
                        }
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// The dart leaving `(crossing, slot)`: forward if the slot emits its
    /// arc, backward otherwise.
    pub fn away_dart(&self, end: EndPoint) -> Dart {
        let a = self.arc_at(end);
        Dart { arc: a, forward: self.arcs[a].tail == end }
    }

    /// Endpoint a dart runs into.
    pub fn dart_target(&self, d: Dart) -> EndPoint {
        if d.forward {
            self.arcs[d.arc].head
        } else {
            self.arcs[d.arc].tail
        }
    }

    /// Faces of the 4-valent map. Walking a face orbit keeps the face on the
    /// left of each dart: after arriving at slot `p`, the walk continues on
    /// the away-dart of slot `p - 1` (the counterclockwise-previous slot).
    pub fn faces(&self) -> FaceStructure {
        let n_darts = self.arcs.len() * 2;
        let mut face_of = vec![usize::MAX; n_darts];
        let mut faces = Vec::new();
        for start in 0..n_darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut orbit = Vec::new();
            let mut d = Dart::from_index(start);
            loop {
                face_of[d.index()] = id;
                orbit.push(d);
                let arrive = self.dart_target(d);
                let next_slot = (arrive.slot + 3) % 4;
                d = self.away_dart(EndPoint::new(arrive.crossing, next_slot));
                if d.index() == start {
                    break;
                }
            }
            faces.push(orbit);
        }
        FaceStructure { faces, face_of }
    }

    /// Next arc along the link component, following the strand through the
    /// crossing at the head of `a`.
    pub fn next_strand_arc(&self, a: ArcId) -> ArcId {
        let head = self.arcs[a].head;
        let sign = self.crossings[head.crossing].sign;
        let out = strand_out_slot(sign, head.slot);
        self.arc_at(EndPoint::new(head.crossing, out))
    }

    /// Next arc along the Seifert circle through the head of `a`.
    pub fn next_seifert_arc(&self, a: ArcId) -> ArcId {
        let head = self.arcs[a].head;
        let sign = self.crossings[head.crossing].sign;
        let out = seifert_out_slot(sign, head.slot);
        self.arc_at(EndPoint::new(head.crossing, out))
    }

    /// Link components of the crossing part: cycles of the strand-following
    /// permutation, each listed from its smallest arc.
    pub fn strand_components(&self) -> Vec<Vec<ArcId>> {
        cycles_of(self.arcs.len(), |a| self.next_strand_arc(a))
    }

    /// Seifert circles of the crossing part, each listed from its smallest
    /// arc.
    pub fn seifert_cycles(&self) -> Vec<Vec<ArcId>> {
        cycles_of(self.arcs.len(), |a| self.next_seifert_arc(a))
    }

    /// Total number of link components, trivial circles included.
    pub fn component_count(&self) -> usize {
        self.strand_components().len() + self.trivial_components
    }

    /// Seifert circle count `s`, trivial circles included.
    pub fn seifert_circle_count(&self) -> usize {
        self.seifert_cycles().len() + self.trivial_components
    }

    /// Index of the link component containing each arc.
    pub fn component_of_arcs(&self) -> Vec<usize> {
        let comps = self.strand_components();
        let mut of = vec![usize::MAX; self.arcs.len()];
        for (i, comp) in comps.iter().enumerate() {
            for &a in comp {
                of[a] = i;
            }
        }
        of
    }

    /// Reverses every crossing type: signs negate, over and under swap. The
    /// slot tables rotate so that slot 0 stays the incoming under-strand.
    pub fn mirror(&self) -> Self {
        let mut d = self.clone();
        for c in 0..d.crossings.len() {
            d.flip_in_place(c);
        }
        debug_assert!(d.validate().is_ok());
        d
    }

    /// Negates one crossing.
    pub fn flip_crossing(&self, c: CrossingId) -> Result<Self> {
        if c >= self.crossings.len() {
            return Err(Error::UnknownCrossing(c));
        }
        let mut d = self.clone();
        d.flip_in_place(c);
        debug_assert!(d.validate().is_ok());
        Ok(d)
    }

    fn flip_in_place(&mut self, c: CrossingId) {
        let old = self.crossings[c].clone();
        let slots = match old.sign {
            // positive -> negative: the old over-in (slot 3) becomes under-in
            Sign::Positive => [old.slots[3], old.slots[0], old.slots[1], old.slots[2]],
            // negative -> positive: the old over-in (slot 1) becomes under-in
            Sign::Negative => [old.slots[1], old.slots[2], old.slots[3], old.slots[0]],
        };
        // Where the arc at old slot j now sits.
        let new_slot: fn(u8) -> u8 = match old.sign {
            Sign::Positive => |j| (j + 1) % 4,
            Sign::Negative => |j| (j + 3) % 4,
        };
        self.crossings[c] = Crossing { sign: old.sign.flip(), slots };
        for arc in self.arcs.iter_mut() {
            if arc.tail.crossing == c {
                arc.tail.slot = new_slot(arc.tail.slot);
            }
            if arc.head.crossing == c {
                arc.head.slot = new_slot(arc.head.slot);
            }
        }
    }

    /// Removes a crossing by the oriented smoothing, reconnecting strands and
    /// absorbing any circle this isolates into the trivial counter.
    pub fn smooth_crossing(&self, c: CrossingId) -> Result<(Self, ArcMap)> {
        if c >= self.crossings.len() {
            return Err(Error::UnknownCrossing(c));
        }
        let sign = self.crossings[c].sign;
        let mut wires = HashMap::new();
        for slot in in_slots(sign) {
            wires.insert(
                EndPoint::new(c, slot),
                EndPoint::new(c, seifert_out_slot(sign, slot)),
            );
        }
        let dead = BTreeSet::from([c]);
        Ok(self.splice(&dead, &wires))
    }

    /// Deletes whole link components; crossings they pass become straight
    /// passages of the surviving strand.
    pub fn delete_components(&self, comps: &BTreeSet<usize>) -> (Self, ArcMap) {
        let of = self.component_of_arcs();
        let mut dead = BTreeSet::new();
        let mut wires = HashMap::new();
        for (ci, cr) in self.crossings.iter().enumerate() {
            let mut removed = false;
            let mut keep_wire = None;
            for slot in in_slots(cr.sign) {
                let arc = cr.slots[slot as usize];
                if comps.contains(&of[arc]) {
                    removed = true;
                } else {
                    keep_wire = Some((
                        EndPoint::new(ci, slot),
                        EndPoint::new(ci, strand_out_slot(cr.sign, slot)),
                    ));
                }
            }
            if removed {
                dead.insert(ci);
                if let Some((from, to)) = keep_wire {
                    wires.insert(from, to);
                }
            }
        }
        // Deleted strands always hit a cut end and are dropped by the splice;
        // surviving strands whose crossings all disappear close into circles
        // that the splice counts as trivial components.
        let (d, map) = self.splice(&dead, &wires);
        (d, map)
    }

    /// Core rewiring step shared by smoothing and component deletion.
    ///
    /// `dead` crossings disappear; each wire joins an incoming end of a dead
    /// crossing to an outgoing end of a dead crossing, splicing the arcs
    /// through. Arcs whose strand is cut (no wire at the end) are dropped.
    /// Chains that close up without touching a surviving crossing become
    /// trivial components.
    fn splice(
        &self,
        dead: &BTreeSet<CrossingId>,
        wires: &HashMap<EndPoint, EndPoint>,
    ) -> (Self, ArcMap) {
        let is_dead = |c: CrossingId| dead.contains(&c);
        let mut rep: Vec<Option<ArcId>> = vec![None; self.arcs.len()];
        let mut new_head: HashMap<ArcId, EndPoint> = HashMap::new();
        let mut dropped = vec![false; self.arcs.len()];
        let mut new_trivial = 0usize;

        // Open chains start at an arc leaving a surviving crossing.
        for a0 in 0..self.arcs.len() {
            if is_dead(self.arcs[a0].tail.crossing) {
                continue;
            }
            let mut end = self.arcs[a0].head;
            rep[a0] = Some(a0);
            loop {
                if !is_dead(end.crossing) {
                    new_head.insert(a0, end);
                    break;
                }
                // A chain anchored on a surviving crossing always finds a
                // wire: cut ends only adjoin arcs of deleted strands.
                let out = *wires.get(&end).expect("anchored chain is wired through");
                let next = self.arc_at(out);
                debug_assert_eq!(self.arcs[next].tail, out);
                rep[next] = Some(a0);
                end = self.arcs[next].head;
            }
        }

        // Remaining arcs sit entirely over dead crossings: they close into
        // free circles (counted) or are cut away (dropped).
        for a0 in 0..self.arcs.len() {
            if rep[a0].is_some() || dropped[a0] {
                continue;
            }
            let mut members = vec![a0];
            let mut end = self.arcs[a0].head;
            let closed = loop {
                match wires.get(&end) {
                    Some(&out) => {
                        let next = self.arc_at(out);
                        if next == a0 {
                            break true;
                        }
                        members.push(next);
                        end = self.arcs[next].head;
                    }
                    None => break false,
                }
            };
            if closed {
                new_trivial += 1;
            }
            for m in members {
                dropped[m] = true;
                rep[m] = None;
            }
        }

        // Compact surviving representatives in old-id order.
        let mut new_id: HashMap<ArcId, ArcId> = HashMap::new();
        let mut kept: Vec<ArcId> = (0..self.arcs.len())
            .filter(|&a| rep[a] == Some(a))
            .collect();
        kept.sort_unstable();
        for (i, &a) in kept.iter().enumerate() {
            new_id.insert(a, i);
        }

        let mut cross_id: HashMap<CrossingId, CrossingId> = HashMap::new();
        let survivors: Vec<CrossingId> =
            (0..self.crossings.len()).filter(|c| !is_dead(*c)).collect();
        for (i, &c) in survivors.iter().enumerate() {
            cross_id.insert(c, i);
        }

        let remap_end = |e: EndPoint| EndPoint::new(cross_id[&e.crossing], e.slot);
        let arcs: Vec<Arc> = kept
            .iter()
            .map(|&a| Arc {
                tail: remap_end(self.arcs[a].tail),
                head: remap_end(new_head[&a]),
            })
            .collect();
        let crossings: Vec<Crossing> = survivors
            .iter()
            .map(|&c| Crossing {
                sign: self.crossings[c].sign,
                slots: core::array::from_fn(|s| {
                    let old_arc = self.crossings[c].slots[s];
                    new_id[&rep[old_arc].expect("slot arc survives")]
                }),
            })
            .collect();

        let d = LinkDiagram {
            crossings,
            arcs,
            trivial_components: self.trivial_components + new_trivial,
        };
        debug_assert!(d.validate().is_ok());
        let map = ArcMap {
            map: (0..self.arcs.len())
                .map(|a| rep[a].map(|r| new_id[&r]))
                .collect(),
        };
        (d, map)
    }

    /// Drops all crossing-free circles.
    pub fn remove_trivial_components(&self) -> Self {
        self.with_trivial_components(0)
    }

    pub fn stats(&self) -> DiagramStats {
        let seifert = crate::seifert::SeifertStructure::new(self);
        let mut pair_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for c in 0..self.crossings.len() {
            let (p, q) = seifert.circles_at_crossing(c);
            let key = (p.min(q), p.max(q));
            *pair_count.entry(key).or_insert(0) += 1;
        }
        let lone_crossings: Vec<CrossingId> = (0..self.crossings.len())
            .filter(|&c| {
                let (p, q) = seifert.circles_at_crossing(c);
                pair_count[&(p.min(q), p.max(q))] == 1
            })
            .collect();
        let has_nested = (0..seifert.circle_count())
            .any(|c| !seifert.left_set(c).is_empty() && !seifert.right_set(c).is_empty());
        DiagramStats {
            crossing_count: self.crossings.len(),
            writhe: self.writhe(),
            seifert_circle_count: self.seifert_circle_count(),
            component_count: self.component_count(),
            is_positive: self.is_positive(),
            lone_crossings,
            has_nested,
            isthmuses: self.isthmuses(),
        }
    }

    /// Crossings at which one face meets two opposite corners; deleting such
    /// a crossing disconnects the underlying projection.
    pub fn isthmuses(&self) -> Vec<CrossingId> {
        if self.crossings.is_empty() {
            return Vec::new();
        }
        let faces = self.faces();
        // The wedge between slots s and s+1 lies to the left of the dart
        // leaving slot s.
        let wedge_face =
            |c: CrossingId, s: u8| faces.face_left_of(self.away_dart(EndPoint::new(c, s)));
        (0..self.crossings.len())
            .filter(|&c| {
                wedge_face(c, 0) == wedge_face(c, 2) || wedge_face(c, 1) == wedge_face(c, 3)
            })
            .collect()
    }

    /// All points of the diagram in deterministic order: one per arc, then
    /// one per trivial circle.
    pub fn all_points(&self) -> Vec<Point> {
        (0..self.arcs.len())
            .map(Point::Arc)
            .chain((0..self.trivial_components).map(Point::Trivial))
            .collect()
    }
}

fn cycles_of(n: usize, next: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut a = start;
        loop {
            seen[a] = true;
            cycle.push(a);
            a = next(a);
            if a == start {
                break;
            }
        }
        out.push(cycle);
    }
    out
}

/// Summary counts and flags of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramStats {
    pub crossing_count: usize,
    pub writhe: i64,
    pub seifert_circle_count: usize,
    pub component_count: usize,
    pub is_positive: bool,
    pub lone_crossings: Vec<CrossingId>,
    pub has_nested: bool,
    pub isthmuses: Vec<CrossingId>,
}
