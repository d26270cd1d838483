//! Constructive sharpness of the right degree bound for positive diagrams.
//!
//! Three rewrites build every positive diagram that realizes the bound from
//! a zero-crossing diagram: a shackle move clasps two coherent parallel
//! strands with two stacked positive crossings, a crossing doubling replaces
//! a positive crossing with two stacked copies, and an Artin move slides a
//! crossing across a triple of consecutive coherent circles (the braid
//! relation). The decomposition runs the reverse direction: normalize with
//! Artin moves until a doubled region appears, undo it one of the two ways
//! the skein relation relates, and recurse on whichever result still
//! realizes the bound.
//!
//! Move scripts address their sites in the canonical labeling of the diagram
//! at application time, so a script replays on any isomorphic copy.


use serde::{Deserialize, Serialize};

use crate::bounds::right_bound_sharp;
use crate::castle;
use crate::diagram::{
    Arc, ArcId, Crossing, CrossingId, Dart, EndPoint, LinkDiagram, Point, Sign,
};
use crate::resolve::{homfly_coherent, PolyCache};
use crate::seifert::SeifertStructure;
use crate::{canonical_form, diagrams_isomorphic, Error, Result};

/// A strand a move attaches to: an arc (by canonical id in scripts, by
/// concrete id during application) or a crossing-free circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrandRef {
    Arc(usize),
    Trivial,
}

/// Which side of the first strand the shackle bridge passes through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArtinDirection {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Move {
    Shackle {
        first: StrandRef,
        second: StrandRef,
        side: Side,
    },
    Double {
        crossing: usize,
    },
    Artin {
        crossings: [usize; 3],
        direction: ArtinDirection,
    },
}

/// A replayable construction from a zero-crossing diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveScript {
    pub start_circles: usize,
    pub moves: Vec<Move>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SharpnessCertificate {
    Decomposable {
        script: MoveScript,
        deg_a_max: i64,
        bound: i64,
        polynomial: serde_json::Value,
    },
    NotSharp {
        deg_a_max: i64,
        bound: i64,
        polynomial: serde_json::Value,
    },
}

impl SharpnessCertificate {
    pub fn script(&self) -> Option<&MoveScript> {
        match self {
            SharpnessCertificate::Decomposable { script, .. } => Some(script),
            SharpnessCertificate::NotSharp { .. } => None,
        }
    }
}

/// The smoothing channel of `circle` at a positive crossing:
/// `(in_slot, out_slot)`.
fn channel_of(s: &SeifertStructure, c: CrossingId, circle: usize) -> (u8, u8) {
    let (under, _) = s.circles_at_crossing(c);
    if under == circle {
        (0, 1)
    } else {
        (3, 2)
    }
}

// ---------------------------------------------------------------------------
// shackle

/// Inserts two stacked positive crossings clasping two coherently oriented
/// parallel strands. Trivial strands are materialized as new circles
/// alongside the other strand. Returns the new diagram and the ids of the
/// two crossings, lower one first.
pub fn apply_shackle(
    d: &LinkDiagram,
    first: StrandRef,
    second: StrandRef,
    side: Side,
) -> Result<(LinkDiagram, (CrossingId, CrossingId))> {
    match (first, second) {
        (StrandRef::Trivial, StrandRef::Trivial) => {
            if d.trivial_components() < 2 {
                return Err(Error::PatternMismatch(
                    "two trivial circles are not available".into(),
                ));
            }
            Ok(clasp_two_trivial(d))
        }
        (StrandRef::Arc(a), StrandRef::Trivial) | (StrandRef::Trivial, StrandRef::Arc(a)) => {
            if d.trivial_components() < 1 {
                return Err(Error::PatternMismatch("no trivial circle available".into()));
            }
            if a >= d.arc_count() {
                return Err(Error::PatternMismatch(format!("no arc {a}")));
            }
            // Keep the side meaningful relative to the arc.
            Ok(clasp_arc_with_new_circle(d, a, side))
        }
        (StrandRef::Arc(a), StrandRef::Arc(b)) => clasp_two_arcs(d, a, b, side),
    }
}

fn braid_in_slot(left: bool) -> u8 {
    if left {
        3
    } else {
        0
    }
}

fn braid_out_slot(left: bool) -> u8 {
    if left {
        2
    } else {
        1
    }
}

fn clasp_two_trivial(d: &LinkDiagram) -> (LinkDiagram, (CrossingId, CrossingId)) {
    let mut crossings = d.crossings().to_vec();
    let mut arcs = d.arcs().to_vec();
    let x1 = crossings.len();
    let x2 = x1 + 1;
    crossings.push(Crossing { sign: Sign::Positive, slots: [usize::MAX; 4] });
    crossings.push(Crossing { sign: Sign::Positive, slots: [usize::MAX; 4] });
    let wire = |arcs: &mut Vec<Arc>, crossings: &mut Vec<Crossing>, tail: EndPoint, head: EndPoint| {
        let id = arcs.len();
        arcs.push(Arc { tail, head });
        crossings[tail.crossing].slots[tail.slot as usize] = id;
        crossings[head.crossing].slots[head.slot as usize] = id;
    };
    for left in [true, false] {
        // middle arc, then the wrap-around back down
        wire(
            &mut arcs,
            &mut crossings,
            EndPoint::new(x1, braid_out_slot(left)),
            EndPoint::new(x2, braid_in_slot(left)),
        );
        wire(
            &mut arcs,
            &mut crossings,
            EndPoint::new(x2, braid_out_slot(left)),
            EndPoint::new(x1, braid_in_slot(left)),
        );
    }
    let out = LinkDiagram::new(crossings, arcs, d.trivial_components() - 2)
        .expect("clasp of two circles embeds");
    (out, (x1, x2))
}

fn clasp_arc_with_new_circle(
    d: &LinkDiagram,
    a: ArcId,
    side: Side,
) -> (LinkDiagram, (CrossingId, CrossingId)) {
    let mut crossings = d.crossings().to_vec();
    let mut arcs = d.arcs().to_vec();
    let x1 = crossings.len();
    let x2 = x1 + 1;
    crossings.push(Crossing { sign: Sign::Positive, slots: [usize::MAX; 4] });
    crossings.push(Crossing { sign: Sign::Positive, slots: [usize::MAX; 4] });
    // side = Left puts the new circle in the face on the left of `a`.
    let arc_left = side == Side::Right;
    let old_head = arcs[a].head;
    // a now ends at the bottom crossing
    arcs[a].head = EndPoint::new(x1, braid_in_slot(arc_left));
    crossings[x1].slots[braid_in_slot(arc_left) as usize] = a;
    let wire = |arcs: &mut Vec<Arc>, crossings: &mut Vec<Crossing>, tail: EndPoint, head: EndPoint| {
        let id = arcs.len();
        arcs.push(Arc { tail, head });
        crossings[tail.crossing].slots[tail.slot as usize] = id;
        crossings[head.crossing].slots[head.slot as usize] = id;
    };
    // middle arcs of both columns
    for left in [true, false] {
        wire(
            &mut arcs,
            &mut crossings,
            EndPoint::new(x1, braid_out_slot(left)),
            EndPoint::new(x2, braid_in_slot(left)),
        );
    }
    // the arc strand continues to the old head
    let cont = arcs.len();
    arcs.push(Arc { tail: EndPoint::new(x2, braid_out_slot(arc_left)), head: old_head });
    crossings[x2].slots[braid_out_slot(arc_left) as usize] = cont;
    match crossings[old_head.crossing].slots.get_mut(old_head.slot as usize) {
        Some(s) => *s = cont,
        None => unreachable!(),
    }
    // the new circle wraps back down
    wire(
        &mut arcs,
        &mut crossings,
        EndPoint::new(x2, braid_out_slot(!arc_left)),
        EndPoint::new(x1, braid_in_slot(!arc_left)),
    );
    let out = LinkDiagram::new(crossings, arcs, d.trivial_components() - 1)
        .expect("clasp with a new circle embeds");
    (out, (x1, x2))
}

fn clasp_two_arcs(
    d: &LinkDiagram,
    a: ArcId,
    b: ArcId,
    side: Side,
) -> Result<(LinkDiagram, (CrossingId, CrossingId))> {
    if a >= d.arc_count() || b >= d.arc_count() || a == b {
        return Err(Error::PatternMismatch("bad arc pair".into()));
    }
    let s = SeifertStructure::new(d);
    if s.circle_of_arc(a) == s.circle_of_arc(b) {
        return Err(Error::PatternMismatch(
            "shackle strands must lie on distinct circles".into(),
        ));
    }
    // Within one piece of the map the bridge face must see `a` and `b` as
    // antiparallel boundary darts: side = Left means the face on the left of
    // `a`, which is then on the right of `b`. Arcs of different pieces can
    // always be clasped: the placement of split pieces is free.
    let comp = d.map_components();
    let same_piece =
        comp[d.arcs()[a].tail.crossing] == comp[d.arcs()[b].tail.crossing];
    if same_piece {
        let faces = d.faces();
        let (fa, fb) = match side {
            Side::Left => (
                faces.face_left_of(Dart { arc: a, forward: true }),
                faces.face_left_of(Dart { arc: b, forward: false }),
            ),
            Side::Right => (
                faces.face_left_of(Dart { arc: a, forward: false }),
                faces.face_left_of(Dart { arc: b, forward: true }),
            ),
        };
        if fa != fb {
            return Err(Error::PatternMismatch(
                "strands are not coherent boundary arcs of a common face".into(),
            ));
        }
    }
    let arc_left = side == Side::Right;
    let mut crossings = d.crossings().to_vec();
    let mut arcs = d.arcs().to_vec();
    let x1 = crossings.len();
    let x2 = x1 + 1;
    crossings.push(Crossing { sign: Sign::Positive, slots: [usize::MAX; 4] });
    crossings.push(Crossing { sign: Sign::Positive, slots: [usize::MAX; 4] });
    let old_head_a = arcs[a].head;
    let old_head_b = arcs[b].head;
    arcs[a].head = EndPoint::new(x1, braid_in_slot(arc_left));
    crossings[x1].slots[braid_in_slot(arc_left) as usize] = a;
    arcs[b].head = EndPoint::new(x1, braid_in_slot(!arc_left));
    crossings[x1].slots[braid_in_slot(!arc_left) as usize] = b;
    let wire = |arcs: &mut Vec<Arc>, crossings: &mut Vec<Crossing>, tail: EndPoint, head: EndPoint| {
        let id = arcs.len();
        arcs.push(Arc { tail, head });
        crossings[tail.crossing].slots[tail.slot as usize] = id;
        crossings[head.crossing].slots[head.slot as usize] = id;
    };
    for left in [true, false] {
        wire(
            &mut arcs,
            &mut crossings,
            EndPoint::new(x1, braid_out_slot(left)),
            EndPoint::new(x2, braid_in_slot(left)),
        );
    }
    for (left, old_head) in [(arc_left, old_head_a), (!arc_left, old_head_b)] {
        let id = arcs.len();
        arcs.push(Arc { tail: EndPoint::new(x2, braid_out_slot(left)), head: old_head });
        crossings[x2].slots[braid_out_slot(left) as usize] = id;
        crossings[old_head.crossing].slots[old_head.slot as usize] = id;
    }
    let out = LinkDiagram::new(crossings, arcs, d.trivial_components())
        .map_err(|e| Error::PatternMismatch(format!("clasp does not embed: {e}")))?;
    Ok((out, (x1, x2)))
}

// ---------------------------------------------------------------------------
// doubling

/// Replaces a positive crossing by two stacked positive crossings on the
/// same strand pair. Returns the new diagram and the id of the added
/// crossing.
pub fn apply_double(d: &LinkDiagram, c: CrossingId) -> Result<(LinkDiagram, CrossingId)> {
    if c >= d.crossing_count() {
        return Err(Error::UnknownCrossing(c));
    }
    if d.crossings()[c].sign != Sign::Positive {
        return Err(Error::PatternMismatch("only positive crossings double".into()));
    }
    let mut crossings = d.crossings().to_vec();
    let mut arcs = d.arcs().to_vec();
    let x = crossings.len();
    crossings.push(Crossing { sign: Sign::Positive, slots: [usize::MAX; 4] });
    // The two outgoing arcs of c feed the new crossing: under-out (slot 2)
    // continues on the left column, over-out (slot 1) on the right.
    for (out_slot, left) in [(2u8, true), (1u8, false)] {
        let arc = d.arc_at(EndPoint::new(c, out_slot));
        let old_head = arcs[arc].head;
        arcs[arc].head = EndPoint::new(x, braid_in_slot(left));
        crossings[x].slots[braid_in_slot(left) as usize] = arc;
        let id = arcs.len();
        arcs.push(Arc { tail: EndPoint::new(x, braid_out_slot(left)), head: old_head });
        crossings[x].slots[braid_out_slot(left) as usize] = id;
        crossings[old_head.crossing].slots[old_head.slot as usize] = id;
    }
    let out = LinkDiagram::new(crossings, arcs, d.trivial_components())
        .expect("doubling embeds");
    Ok((out, x))
}

// ---------------------------------------------------------------------------
// Artin moves

/// A matched braid-relation site: three positive crossings on circles
/// `(A, B, A)` / `(B, C)` wired directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArtinSite {
    pub first: CrossingId,
    pub middle: CrossingId,
    pub last: CrossingId,
    /// Circle only on the outer pair.
    pub outer_circle: usize,
    /// Shared circle.
    pub shared_circle: usize,
    /// Circle only on the middle crossing.
    pub middle_circle: usize,
    /// Whether the outer circle runs on the left column.
    pub outer_on_left: bool,
}

impl ArtinSite {
    pub fn direction(&self) -> ArtinDirection {
        if self.outer_on_left {
            ArtinDirection::B
        } else {
            ArtinDirection::A
        }
    }

    pub fn crossings(&self) -> [CrossingId; 3] {
        [self.first, self.middle, self.last]
    }
}

/// All matched Artin sites, in deterministic order.
pub fn artin_sites(d: &LinkDiagram, s: &SeifertStructure) -> Vec<ArtinSite> {
    let mut out = Vec::new();
    for middle in 0..d.crossing_count() {
        if d.crossings()[middle].sign != Sign::Positive {
            continue;
        }
        let (p, q) = s.circles_at_crossing(middle);
        for shared in [p, q] {
            if let Some(site) = match_site(d, s, middle, shared) {
                out.push(site);
            }
        }
    }
    out
}

fn match_site(
    d: &LinkDiagram,
    s: &SeifertStructure,
    middle: CrossingId,
    shared: usize,
) -> Option<ArtinSite> {
    let (p, q) = s.circles_at_crossing(middle);
    let middle_circle = if p == shared { q } else { p };
    let (b_in, b_out) = channel_of(s, middle, shared);
    // direct predecessor and successor along the shared circle
    let in_arc = d.arc_at(EndPoint::new(middle, b_in));
    let first = d.arcs()[in_arc].tail.crossing;
    let out_arc = d.arc_at(EndPoint::new(middle, b_out));
    let last = d.arcs()[out_arc].head.crossing;
    if first == middle || last == middle || first == last {
        return None;
    }
    if d.crossings()[first].sign != Sign::Positive || d.crossings()[last].sign != Sign::Positive {
        return None;
    }
    // the outer crossings must join the shared circle to one common circle
    let other = |c: CrossingId| {
        let (x, y) = s.circles_at_crossing(c);
        if x == shared {
            Some(y)
        } else if y == shared {
            Some(x)
        } else {
            None
        }
    };
    let outer_circle = other(first)?;
    if other(last)? != outer_circle || outer_circle == middle_circle || outer_circle == shared {
        return None;
    }
    // the arcs found must leave/enter through the shared-circle channels
    let (f_in, f_out) = channel_of(s, first, shared);
    let (l_in, _l_out) = channel_of(s, last, shared);
    if d.arcs()[in_arc].tail != EndPoint::new(first, f_out)
        || d.arcs()[out_arc].head != EndPoint::new(last, l_in)
    {
        return None;
    }
    let _ = f_in;
    // outer strand runs directly from first to last
    let (a_in_first, a_out_first) = channel_of(s, first, outer_circle);
    let (a_in_last, _) = channel_of(s, last, outer_circle);
    let outer_arc = d.arc_at(EndPoint::new(first, a_out_first));
    if d.arcs()[outer_arc].head != EndPoint::new(last, a_in_last) {
        return None;
    }
    let _ = a_in_first;
    // consistent column layout: the outer circle sits on one side of the
    // shared circle at both outer crossings, and the shared circle on the
    // same side of the middle one.
    let left_of = |c: CrossingId, circle: usize| channel_of(s, c, circle).0 == 3;
    let outer_on_left = left_of(first, outer_circle);
    if left_of(last, outer_circle) != outer_on_left || left_of(middle, shared) != outer_on_left {
        return None;
    }
    Some(ArtinSite {
        first,
        middle,
        last,
        outer_circle,
        shared_circle: shared,
        middle_circle,
        outer_on_left,
    })
}

/// Applies the braid relation at a matched site. The pattern
/// `(A,B) (B,C) (A,B)` becomes `(B,C) (A,B) (B,C)` with the same boundary.
pub fn apply_artin(
    d: &LinkDiagram,
    crossings: [CrossingId; 3],
    direction: Option<ArtinDirection>,
) -> Result<(LinkDiagram, [CrossingId; 3])> {
    let s = SeifertStructure::new(d);
    let site = artin_sites(d, &s)
        .into_iter()
        .find(|site| site.crossings() == crossings)
        .ok_or_else(|| {
            Error::PatternMismatch(format!("no braid-relation site at {crossings:?}"))
        })?;
    if let Some(dir) = direction {
        if site.direction() != dir {
            return Err(Error::PatternMismatch(format!(
                "site has direction {:?}",
                site.direction()
            )));
        }
    }
    Ok(rewrite_site(d, &s, &site))
}

fn rewrite_site(
    d: &LinkDiagram,
    s: &SeifertStructure,
    site: &ArtinSite,
) -> (LinkDiagram, [CrossingId; 3]) {
    let (a_c, b_c, c_c) = (site.outer_circle, site.shared_circle, site.middle_circle);
    let ch = |cr: CrossingId, circle: usize| channel_of(s, cr, circle);
    // boundary stubs
    let in_a = d.arc_at(EndPoint::new(site.first, ch(site.first, a_c).0));
    let in_b = d.arc_at(EndPoint::new(site.first, ch(site.first, b_c).0));
    let in_c = d.arc_at(EndPoint::new(site.middle, ch(site.middle, c_c).0));
    let out_a = d.arc_at(EndPoint::new(site.last, ch(site.last, a_c).1));
    let out_b = d.arc_at(EndPoint::new(site.last, ch(site.last, b_c).1));
    let out_c = d.arc_at(EndPoint::new(site.middle, ch(site.middle, c_c).1));
    // internal arcs
    let arc1 = d.arc_at(EndPoint::new(site.first, ch(site.first, b_c).1));
    let arc2 = d.arc_at(EndPoint::new(site.middle, ch(site.middle, b_c).1));
    let arc3 = d.arc_at(EndPoint::new(site.first, ch(site.first, a_c).1));

    // new crossings reuse the three ids: bottom and top on (B, C), middle
    // on (A, B); the column layout is preserved.
    let bottom = site.first;
    let mid = site.middle;
    let top = site.last;
    // In the (A,B,C) layout B is left of C and A left of B; mirrored
    // otherwise.
    let b_left_of_c = site.outer_on_left;
    let a_left_of_b = site.outer_on_left;

    let mut crossings = d.crossings().to_vec();
    let mut arcs = d.arcs().to_vec();
    for &c in &[bottom, mid, top] {
        crossings[c] = Crossing { sign: Sign::Positive, slots: [usize::MAX; 4] };
    }
    let slot_in = |left: bool| braid_in_slot(left);
    let slot_out = |left: bool| braid_out_slot(left);
    // (crossing, circle, left?) endpoints
    let b_at_outer = b_left_of_c; // B's column at the bottom/top crossings
    let set_head = |arcs: &mut Vec<Arc>, crossings: &mut Vec<Crossing>, arc: ArcId, end: EndPoint| {
        arcs[arc].head = end;
        crossings[end.crossing].slots[end.slot as usize] = arc;
    };
    let set_tail = |arcs: &mut Vec<Arc>, crossings: &mut Vec<Crossing>, arc: ArcId, end: EndPoint| {
        arcs[arc].tail = end;
        crossings[end.crossing].slots[end.slot as usize] = arc;
    };

    // boundary in
    set_head(&mut arcs, &mut crossings, in_a, EndPoint::new(mid, slot_in(a_left_of_b)));
    set_head(&mut arcs, &mut crossings, in_b, EndPoint::new(bottom, slot_in(b_at_outer)));
    set_head(&mut arcs, &mut crossings, in_c, EndPoint::new(bottom, slot_in(!b_at_outer)));
    // boundary out
    set_tail(&mut arcs, &mut crossings, out_a, EndPoint::new(mid, slot_out(a_left_of_b)));
    set_tail(&mut arcs, &mut crossings, out_b, EndPoint::new(top, slot_out(b_at_outer)));
    set_tail(&mut arcs, &mut crossings, out_c, EndPoint::new(top, slot_out(!b_at_outer)));
    // internal: bottom -> mid on B, mid -> top on B, bottom -> top on C
    set_tail(&mut arcs, &mut crossings, arc1, EndPoint::new(bottom, slot_out(b_at_outer)));
    set_head(&mut arcs, &mut crossings, arc1, EndPoint::new(mid, slot_in(!a_left_of_b)));
    set_tail(&mut arcs, &mut crossings, arc2, EndPoint::new(mid, slot_out(!a_left_of_b)));
    set_head(&mut arcs, &mut crossings, arc2, EndPoint::new(top, slot_in(b_at_outer)));
    set_tail(&mut arcs, &mut crossings, arc3, EndPoint::new(bottom, slot_out(!b_at_outer)));
    set_head(&mut arcs, &mut crossings, arc3, EndPoint::new(top, slot_in(!b_at_outer)));

    let out = LinkDiagram::new(crossings, arcs, d.trivial_components())
        .expect("braid relation preserves the embedding");
    debug_assert_eq!(out.writhe(), d.writhe());
    (out, [bottom, mid, top])
}

// ---------------------------------------------------------------------------
// double regions

/// Ordered pairs `(c, c2)` of same-sign crossings stacked as a doubled
/// crossing: both strands run directly from `c` into `c2` and bound an
/// empty two-sided face between them.
pub fn find_double_regions(d: &LinkDiagram) -> Vec<(CrossingId, CrossingId)> {
    let faces = d.faces();
    let mut out = Vec::new();
    for c in 0..d.crossing_count() {
        let sign = d.crossings()[c].sign;
        let (out_l, out_r) = match sign {
            Sign::Positive => (2u8, 1u8),
            Sign::Negative => (3u8, 2u8),
        };
        let a_l = d.arc_at(EndPoint::new(c, out_l));
        let a_r = d.arc_at(EndPoint::new(c, out_r));
        let (in_l, in_r) = match sign {
            Sign::Positive => (3u8, 0u8),
            Sign::Negative => (0u8, 1u8),
        };
        let h_l = d.arcs()[a_l].head;
        let h_r = d.arcs()[a_r].head;
        if h_l.crossing != h_r.crossing || h_l.crossing == c {
            continue;
        }
        let c2 = h_l.crossing;
        if d.crossings()[c2].sign != sign {
            continue;
        }
        if h_l.slot != in_l || h_r.slot != in_r {
            continue;
        }
        // the lens between the two strands is an empty two-sided face
        let lens = faces.face_left_of(Dart { arc: a_r, forward: true });
        if lens == faces.face_left_of(Dart { arc: a_l, forward: false })
            && faces.faces[lens].len() == 2
        {
            out.push((c, c2));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Artin normalization

/// One normalization step: the site it rewrote and the replayable inverse.
#[derive(Debug, Clone)]
pub struct NormalizeStep {
    pub site: [CrossingId; 3],
    pub direction: ArtinDirection,
    /// Inverse move addressed canonically in the post-move diagram.
    pub inverse: Move,
    pub potential_before: usize,
    pub potential_after: usize,
}

fn pair_potential(s: &SeifertStructure, alpha: &[usize]) -> usize {
    let n = s.circle_count();
    let mut total = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if s.multiplicity(i, j) == 0 {
                continue;
            }
            if alpha[i] == usize::MAX || alpha[j] == usize::MAX {
                continue;
            }
            total += alpha[i].min(alpha[j]) * s.multiplicity(i, j);
        }
    }
    total
}

/// Pulls crossings toward the circle of `x` with Artin moves until no triple
/// of consecutive coherent circles admits one. Each move drops the distance
/// potential by exactly one, so the run terminates within the initial
/// potential.
pub fn artin_normalize(
    d: &LinkDiagram,
    x: Point,
) -> Result<(LinkDiagram, Vec<NormalizeStep>)> {
    if !d.is_positive() {
        return Err(Error::NotPositive);
    }
    if d.trivial_components() > 0 {
        return Err(Error::Precondition("remove trivial components first".into()));
    }
    let x_arc = match x {
        Point::Arc(a) => a,
        Point::Trivial(_) => {
            return Err(Error::Precondition("the base point must lie on a strand".into()))
        }
    };
    let mut current = d.clone();
    let mut steps: Vec<NormalizeStep> = Vec::new();
    let budget = {
        let s = SeifertStructure::new(&current);
        let alpha = s.graph_distances(s.circle_of_arc(x_arc));
        pair_potential(&s, &alpha)
    };
    for _ in 0..=budget {
        let s = SeifertStructure::new(&current);
        let r = s.circle_of_arc(x_arc);
        let alpha = s.graph_distances(r);
        let before = pair_potential(&s, &alpha);
        let site = artin_sites(&current, &s).into_iter().find(|site| {
            let (a, b, c) = (site.outer_circle, site.shared_circle, site.middle_circle);
            alpha[a] != usize::MAX
                && alpha[b] != usize::MAX
                && alpha[c] != usize::MAX
                && alpha[a] == alpha[b] + 1
                && alpha[b] == alpha[c] + 1
                && s.coherent(a, b)
                && s.coherent(b, c)
                && s.coherent(a, c)
        });
        let Some(site) = site else {
            return Ok((current, steps));
        };
        let direction = site.direction();
        let (next, new_ids) = rewrite_site(&current, &s, &site);
        let after = {
            let s2 = SeifertStructure::new(&next);
            let alpha2 = s2.graph_distances(s2.circle_of_arc(x_arc));
            pair_potential(&s2, &alpha2)
        };
        assert_eq!(after + 1, before, "each move drops the potential by one");
        // canonical address of the inverse site, valid on `next`
        let form = canonical_form(&next);
        let canon_of = |c: CrossingId| {
            form.crossing_map
                .iter()
                .position(|&k| k == c)
                .expect("crossing is labeled")
        };
        let inverse = Move::Artin {
            crossings: [canon_of(new_ids[0]), canon_of(new_ids[1]), canon_of(new_ids[2])],
            direction: match direction {
                ArtinDirection::A => ArtinDirection::B,
                ArtinDirection::B => ArtinDirection::A,
            },
        };
        steps.push(NormalizeStep {
            site: site.crossings(),
            direction,
            inverse,
            potential_before: before,
            potential_after: after,
        });
        current = next;
    }
    Err(Error::LemmaViolation)
}

// ---------------------------------------------------------------------------
// replay and verification

fn resolve_arc(d: &LinkDiagram, canonical: usize, step: usize) -> Result<ArcId> {
    let form = canonical_form(d);
    form.arc_map.get(canonical).copied().ok_or(Error::BadScript {
        step,
        reason: format!("no arc with canonical id {canonical}"),
    })
}

fn resolve_crossing(d: &LinkDiagram, canonical: usize, step: usize) -> Result<CrossingId> {
    let form = canonical_form(d);
    form.crossing_map.get(canonical).copied().ok_or(Error::BadScript {
        step,
        reason: format!("no crossing with canonical id {canonical}"),
    })
}

/// Applies the moves of a script in order, starting from the zero-crossing
/// diagram it declares.
pub fn replay(script: &MoveScript) -> Result<LinkDiagram> {
    let mut d = LinkDiagram::new(Vec::new(), Vec::new(), script.start_circles)?;
    for (step, mv) in script.moves.iter().enumerate() {
        d = apply_move(&d, mv, step)?;
    }
    Ok(d)
}

/// Applies one canonically addressed move; `step` tags script errors.
pub fn apply_move(d: &LinkDiagram, mv: &Move, step: usize) -> Result<LinkDiagram> {
    let bad = |e: Error| match e {
        Error::PatternMismatch(reason) => Error::BadScript { step, reason },
        Error::UnknownCrossing(c) => Error::BadScript { step, reason: format!("no crossing {c}") },
        other => other,
    };
    match mv {
        Move::Shackle { first, second, side } => {
            let first = match first {
                StrandRef::Arc(a) => StrandRef::Arc(resolve_arc(d, *a, step)?),
                StrandRef::Trivial => StrandRef::Trivial,
            };
            let second = match second {
                StrandRef::Arc(a) => StrandRef::Arc(resolve_arc(d, *a, step)?),
                StrandRef::Trivial => StrandRef::Trivial,
            };
            Ok(apply_shackle(d, first, second, *side).map_err(bad)?.0)
        }
        Move::Double { crossing } => {
            let c = resolve_crossing(d, *crossing, step)?;
            Ok(apply_double(d, c).map_err(bad)?.0)
        }
        Move::Artin { crossings, direction } => {
            let mut concrete = [0; 3];
            for (i, c) in crossings.iter().enumerate() {
                concrete[i] = resolve_crossing(d, *c, step)?;
            }
            Ok(apply_artin(d, concrete, Some(*direction)).map_err(bad)?.0)
        }
    }
}

/// Replays a script and compares the result with the target diagram.
pub fn verify(script: &MoveScript, target: &LinkDiagram) -> Result<bool> {
    Ok(diagrams_isomorphic(&replay(script)?, target))
}

// ---------------------------------------------------------------------------
// the decomposition

/// Canonical id of a concrete crossing.
fn canonical_crossing(d: &LinkDiagram, c: CrossingId) -> usize {
    canonical_form(d)
        .crossing_map
        .iter()
        .position(|&k| k == c)
        .expect("crossing is labeled")
}

/// Records the shackle that rebuilds `target` from `v` after removing the
/// doubled region whose strands became `ref_p` and `ref_q`.
fn shackle_record(
    v: &LinkDiagram,
    target: &LinkDiagram,
    ref_p: StrandRef,
    ref_q: StrandRef,
) -> Result<Move> {
    // order the refs deterministically: arcs before trivials, by canonical id
    let form = canonical_form(v);
    let canon = |r: StrandRef| match r {
        StrandRef::Arc(a) => StrandRef::Arc(
            form.arc_map.iter().position(|&k| k == a).expect("arc is labeled"),
        ),
        StrandRef::Trivial => StrandRef::Trivial,
    };
    let (c1, c2) = (canon(ref_p), canon(ref_q));
    let (first, second) = match (c1, c2) {
        (StrandRef::Arc(x), StrandRef::Arc(y)) if y < x => (c2, c1),
        (StrandRef::Trivial, StrandRef::Arc(_)) => (c2, c1),
        _ => (c1, c2),
    };
    for side in [Side::Left, Side::Right] {
        let mv = Move::Shackle { first, second, side };
        if let Ok(candidate) = apply_move(v, &mv, 0) {
            if diagrams_isomorphic(&candidate, target) {
                return Ok(mv);
            }
        }
    }
    Err(Error::Precondition(
        "removed clasp cannot be reattached; this contradicts the construction".into(),
    ))
}

/// Decides the right-bound sharpness of a positive diagram constructively:
/// either a script building it from a zero-crossing diagram, or the degree
/// gap as a counterexample certificate.
pub fn decompose_positive(d: &LinkDiagram, cache: &PolyCache) -> Result<SharpnessCertificate> {
    if !d.is_positive() {
        return Err(Error::NotPositive);
    }
    let p = homfly_coherent(d, cache);
    let deg_a_max = p.degrees().expect("nonempty diagram").a_max;
    let bound = d.writhe() + d.seifert_circle_count() as i64 - 1;
    let sharp = deg_a_max == bound;
    let script = decompose_rec(d, cache)?;
    assert_eq!(
        script.is_some(),
        sharp,
        "the constructive verdict must match the degree test"
    );
    Ok(match script {
        Some(script) => SharpnessCertificate::Decomposable {
            script,
            deg_a_max,
            bound,
            polynomial: p.to_json(),
        },
        None => SharpnessCertificate::NotSharp { deg_a_max, bound, polynomial: p.to_json() },
    })
}

fn decompose_rec(d: &LinkDiagram, cache: &PolyCache) -> Result<Option<MoveScript>> {
    let extra_trivial = d.trivial_components();
    let work = d.remove_trivial_components();
    if work.crossing_count() == 0 {
        return Ok(Some(MoveScript { start_circles: extra_trivial, moves: Vec::new() }));
    }
    let result = decompose_core(&work, cache)?;
    Ok(result.map(|mut script| {
        script.start_circles += extra_trivial;
        script
    }))
}

fn decompose_core(d: &LinkDiagram, cache: &PolyCache) -> Result<Option<MoveScript>> {
    // find a doubled region, normalizing first only when none is in sight
    let mut d_work = d.clone();
    let mut artin_inverses: Vec<Move> = Vec::new();
    let mut sites = find_double_regions(&d_work);
    if sites.is_empty() {
        let s = SeifertStructure::new(&d_work);
        let x = castle::find_appropriate_point(&d_work, &s)?;
        let (normalized, steps) = artin_normalize(&d_work, x)?;
        d_work = normalized;
        artin_inverses = steps.into_iter().rev().map(|st| st.inverse).collect();
        sites = find_double_regions(&d_work);
        if sites.is_empty() {
            // Normalized sharp diagrams always contain one, so the bound
            // cannot be realized.
            return Ok(None);
        }
    }
    let (c, c2) = sites[0];

    // the doubling-undo keeps c; the shackle-undo removes both crossings
    let (u0, map1) = d_work.smooth_crossing(c2).expect("site crossing");
    let c_in_mid = if c2 < c { c - 1 } else { c };
    let (v, map2) = u0.smooth_crossing(c_in_mid).expect("site crossing");

    // strand references of the removed clasp inside V
    let internal_left = d_work.arc_at(EndPoint::new(
        c,
        match d_work.crossings()[c].sign {
            Sign::Positive => 2,
            Sign::Negative => 3,
        },
    ));
    let internal_right = d_work.arc_at(EndPoint::new(
        c,
        match d_work.crossings()[c].sign {
            Sign::Positive => 1,
            Sign::Negative => 2,
        },
    ));
    let through = |arc: ArcId| -> StrandRef {
        match map1.get(arc).and_then(|a| map2.get(a)) {
            Some(a) => StrandRef::Arc(a),
            None => StrandRef::Trivial,
        }
    };

    if right_bound_sharp(&v, cache) {
        if let Some(mut script) = decompose_rec(&v, cache)? {
            let shackle = shackle_record(&v, &d_work, through(internal_left), through(internal_right))?;
            script.moves.push(shackle);
            script.moves.extend(artin_inverses);
            return Ok(Some(script));
        }
        return Ok(None);
    }
    if right_bound_sharp(&u0, cache) {
        if let Some(mut script) = decompose_rec(&u0, cache)? {
            let c_in_u0 = if c2 < c { c - 1 } else { c };
            let mv = Move::Double { crossing: canonical_crossing(&u0, c_in_u0) };
            debug_assert!(diagrams_isomorphic(
                &apply_move(&u0, &mv, 0).expect("doubling applies"),
                &d_work
            ));
            script.moves.push(mv);
            script.moves.extend(artin_inverses);
            return Ok(Some(script));
        }
        return Ok(None);
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// the lone-crossing-free, nesting-free special case

/// Builds a positive diagram without nested circles or lone crossings from a
/// zero-crossing diagram using shackles and doublings only: smooth all the
/// ladders between the level-zero and a level-one floor, recurse, and replay
/// the bundle as one shackle plus doublings.
pub fn decompose_no_nested(d: &LinkDiagram) -> Result<MoveScript> {
    if !d.is_positive() {
        return Err(Error::NotPositive);
    }
    let s = SeifertStructure::new(&d.remove_trivial_components());
    for i in 0..s.circle_count() {
        if !s.left_set(i).is_empty() && !s.right_set(i).is_empty() {
            return Err(Error::Precondition("diagram has nested Seifert circles".into()));
        }
    }
    for i in 0..s.circle_count() {
        for j in (i + 1)..s.circle_count() {
            if s.multiplicity(i, j) == 1 {
                return Err(Error::Precondition("diagram has a lone crossing".into()));
            }
        }
    }
    no_nested_rec(d)
}

fn no_nested_rec(d: &LinkDiagram) -> Result<MoveScript> {
    let extra_trivial = d.trivial_components();
    let work = d.remove_trivial_components();
    if work.crossing_count() == 0 {
        return Ok(MoveScript { start_circles: extra_trivial, moves: Vec::new() });
    }
    let s = SeifertStructure::new(&work);
    let x = castle::find_appropriate_point(&work, &s)?;
    let castle = castle::build_castle(&work, &s, x)?;
    let f1 = (0..castle.floors.len())
        .find(|&i| castle.floors[i].level == 1)
        .expect("a diagram with crossings has a level-one floor");
    let mut ladder_ids: Vec<CrossingId> = castle
        .ladders
        .iter()
        .filter(|l| l.floors == (0, f1))
        .map(|l| l.crossing)
        .collect();
    ladder_ids.sort_unstable();
    ladder_ids.dedup();
    assert!(ladder_ids.len() >= 2, "no lone crossings, so bundles have two ladders");

    // strand refs for the shackle: the two circle sides of the bundle
    let (p_arc, q_arc) = {
        let c0 = ladder_ids[0];
        (
            work.arc_at(EndPoint::new(c0, 1)),
            work.arc_at(EndPoint::new(c0, 2)),
        )
    };

    // smooth the whole bundle, highest ids first so ids stay valid
    let mut reduced = work.clone();
    let mut maps = Vec::new();
    for &c in ladder_ids.iter().rev() {
        let (next, map) = reduced.smooth_crossing(c).expect("ladder exists");
        maps.push(map);
        reduced = next;
    }
    let through = |mut arc: ArcId| -> StrandRef {
        for map in &maps {
            match map.get(arc) {
                Some(a) => arc = a,
                None => return StrandRef::Trivial,
            }
        }
        StrandRef::Arc(arc)
    };

    let mut script = no_nested_rec(&reduced)?;
    script.start_circles += extra_trivial;

    // rebuild the bundle: one shackle, then doublings stacked on top
    let m = ladder_ids.len();
    let mut best: Option<Vec<Move>> = None;
    for side in [Side::Left, Side::Right] {
        let shackle = match shackle_move_for(&reduced, through(p_arc), through(q_arc), side) {
            Some(mv) => mv,
            None => continue,
        };
        let mut current = match apply_move(&reduced, &shackle, 0) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let mut moves = vec![shackle];
        let mut top = current.crossing_count() - 1;
        for _ in 0..(m - 2) {
            let mv = Move::Double { crossing: canonical_crossing(&current, top) };
            let (next, new_top) = apply_double(&current, top).expect("stacked doubling applies");
            moves.push(mv);
            current = next;
            top = new_top;
        }
        if diagrams_isomorphic(&current, &work) {
            best = Some(moves);
            break;
        }
    }
    let moves =
        best.ok_or_else(|| Error::Precondition("bundle replay failed to match".into()))?;
    script.moves.extend(moves);
    Ok(script)
}

fn shackle_move_for(
    v: &LinkDiagram,
    ref_p: StrandRef,
    ref_q: StrandRef,
    side: Side,
) -> Option<Move> {
    let form = canonical_form(v);
    let canon = |r: StrandRef| match r {
        StrandRef::Arc(a) => form
            .arc_map
            .iter()
            .position(|&k| k == a)
            .map(StrandRef::Arc),
        StrandRef::Trivial => Some(StrandRef::Trivial),
    };
    let (c1, c2) = (canon(ref_p)?, canon(ref_q)?);
    let (first, second) = match (c1, c2) {
        (StrandRef::Arc(x), StrandRef::Arc(y)) if y < x => (c2, c1),
        (StrandRef::Trivial, StrandRef::Arc(_)) => (c2, c1),
        _ => (c1, c2),
    };
    Some(Move::Shackle { first, second, side })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid::parse_braid;
    use crate::resolve::{homfly, Engine};

    fn zero(n: usize) -> LinkDiagram {
        LinkDiagram::new(Vec::new(), Vec::new(), n).unwrap()
    }

    #[test]
    fn shackle_of_two_circles_is_the_positive_clasp() {
        let d = zero(2);
        let (out, _) = apply_shackle(&d, StrandRef::Trivial, StrandRef::Trivial, Side::Left).unwrap();
        let h = parse_braid("2: 1 1").unwrap();
        assert!(diagrams_isomorphic(&out, &h));
        assert_eq!(out.writhe(), 2);
        assert_eq!(out.seifert_circle_count(), 2);
    }

    #[test]
    fn shackle_deltas() {
        let h = parse_braid("2: 1 1").unwrap().with_trivial_components(1);
        for side in [Side::Left, Side::Right] {
            let (out, _) = apply_shackle(&h, StrandRef::Arc(0), StrandRef::Trivial, side).unwrap();
            assert_eq!(out.crossing_count(), h.crossing_count() + 2);
            assert_eq!(out.writhe(), h.writhe() + 2);
            assert_eq!(out.seifert_circle_count(), h.seifert_circle_count());
            out.validate().unwrap();
        }
    }

    #[test]
    fn double_hopf_gives_trefoil_diagram() {
        let h = parse_braid("2: 1 1").unwrap();
        let t = parse_braid("2: 1 1 1").unwrap();
        for c in 0..2 {
            let (out, _) = apply_double(&h, c).unwrap();
            assert!(diagrams_isomorphic(&out, &t));
        }
        assert!(apply_double(&h.mirror(), 0).is_err());
    }

    #[test]
    fn artin_moves_swap_braid_words() {
        let a = parse_braid("3: 1 2 1").unwrap();
        let b = parse_braid("3: 2 1 2").unwrap();
        let sa = artin_sites(&a, &SeifertStructure::new(&a));
        assert_eq!(sa.len(), 1, "one braid-relation site");
        let (rewritten, _) = apply_artin(&a, sa[0].crossings(), None).unwrap();
        assert!(diagrams_isomorphic(&rewritten, &b));
        let sb = artin_sites(&b, &SeifertStructure::new(&b));
        assert_eq!(sb.len(), 1);
        let (back, _) = apply_artin(&b, sb[0].crossings(), None).unwrap();
        assert!(diagrams_isomorphic(&back, &a));
        // the two directions are opposite
        assert_ne!(sa[0].direction(), sb[0].direction());
    }

    #[test]
    fn move_error_paths() {
        let zero2 = zero(2);
        // not enough circles
        assert!(apply_shackle(&zero(1), StrandRef::Trivial, StrandRef::Trivial, Side::Left).is_err());
        // strands must sit on distinct circles
        let h = parse_braid("2: 1 1").unwrap();
        let s = SeifertStructure::new(&h);
        let same_circle: Vec<usize> = s.circles()[0].clone();
        assert!(apply_shackle(
            &h,
            StrandRef::Arc(same_circle[0]),
            StrandRef::Arc(same_circle[1]),
            Side::Left
        )
        .is_err());
        // doubling needs a positive crossing that exists
        assert!(apply_double(&h, 7).is_err());
        // a braid-relation site rejects the wrong direction claim
        let a = parse_braid("3: 1 2 1").unwrap();
        let site = artin_sites(&a, &SeifertStructure::new(&a))[0];
        let wrong = match site.direction() {
            ArtinDirection::A => ArtinDirection::B,
            ArtinDirection::B => ArtinDirection::A,
        };
        assert!(apply_artin(&a, site.crossings(), Some(wrong)).is_err());
        assert!(apply_artin(&a, [0, 0, 0], None).is_err());
        let _ = zero2;
    }

    #[test]
    fn artin_preserves_polynomial() {
        for word in ["3: 1 2 1", "3: 2 1 2", "3: 1 2 1 2", "4: 1 2 3 2 1 2"] {
            let d = parse_braid(word).unwrap();
            let s = SeifertStructure::new(&d);
            for site in artin_sites(&d, &s) {
                let (out, _) = apply_artin(&d, site.crossings(), None).unwrap();
                assert_eq!(
                    homfly(&out, Engine::Oracle),
                    homfly(&d, Engine::Oracle),
                    "{word}"
                );
                assert_eq!(out.writhe(), d.writhe());
                assert_eq!(out.seifert_circle_count(), d.seifert_circle_count());
            }
        }
    }

    #[test]
    fn double_regions_of_hopf_and_unknots() {
        let h = parse_braid("2: 1 1").unwrap();
        assert_eq!(find_double_regions(&h).len(), 2);
        let u = parse_braid("3: 1 2").unwrap();
        assert_eq!(find_double_regions(&u).len(), 0);
    }

    #[test]
    fn replay_empty_script() {
        let script = MoveScript { start_circles: 2, moves: Vec::new() };
        let d = replay(&script).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn decompose_hopf() {
        let h = parse_braid("2: 1 1").unwrap();
        let cert = decompose_positive(&h, &PolyCache::new()).unwrap();
        let script = cert.script().expect("the clasp realizes the bound");
        assert_eq!(script.moves.len(), 1);
        assert!(matches!(script.moves[0], Move::Shackle { .. }));
        assert!(verify(script, &h).unwrap());
    }

    #[test]
    fn decompose_unknot_closure_is_not_sharp() {
        let u = parse_braid("3: 1 2").unwrap();
        let cert = decompose_positive(&u, &PolyCache::new()).unwrap();
        match cert {
            SharpnessCertificate::NotSharp { deg_a_max, bound, .. } => {
                assert_eq!(deg_a_max, 0);
                assert_eq!(bound, 4);
            }
            SharpnessCertificate::Decomposable { .. } => panic!("kinked unknot is not sharp"),
        }
    }

    #[test]
    fn decompose_torus35_and_verify() {
        let t = parse_braid("3: 1 2 1 2 1 2 1 2 1 2").unwrap();
        // no directly stacked pair before normalization; the slides expose one
        assert!(find_double_regions(&t).is_empty());
        let cache = PolyCache::new();
        let cert = decompose_positive(&t, &cache).unwrap();
        let script = cert.script().expect("torus braids realize the bound");
        assert!(verify(script, &t).unwrap());
        let doubles = script.moves.iter().filter(|m| matches!(m, Move::Double { .. })).count();
        let shackles = script.moves.iter().filter(|m| matches!(m, Move::Shackle { .. })).count();
        assert_eq!(2 * shackles + doubles, 10);
    }

    #[test]
    fn decompose_full_twist() {
        let ft = parse_braid("3: 2 1 2 1 2 1").unwrap();
        let cache = PolyCache::new();
        let cert = decompose_positive(&ft, &cache).unwrap();
        let script = cert.script().expect("the full twist realizes the bound");
        assert!(verify(script, &ft).unwrap());
    }

    #[test]
    fn verify_rejects_truncated_script() {
        let t = parse_braid("2: 1 1 1").unwrap();
        let cert = decompose_positive(&t, &PolyCache::new()).unwrap();
        let script = cert.script().unwrap().clone();
        assert!(verify(&script, &t).unwrap());
        let mut truncated = script.clone();
        truncated.moves.pop();
        assert!(!verify(&truncated, &t).unwrap());
    }

    #[test]
    fn normalize_moves_word() {
        // Normalization pulls crossings toward the base circle: from one end
        // circle the relation word moves once, from the other it is already
        // normalized.
        let d = parse_braid("3: 2 1 2").unwrap();
        let target = parse_braid("3: 1 2 1").unwrap();
        let s = SeifertStructure::new(&d);
        let mut move_counts = Vec::new();
        for circle in 0..s.circle_count() {
            if !s.innermost(circle) {
                continue;
            }
            let x = Point::Arc(s.circles()[circle][0]);
            if castle::has_traps(&d, &s, &castle::build_castle(&d, &s, x).unwrap()) {
                continue;
            }
            let (out, steps) = artin_normalize(&d, x).unwrap();
            for st in &steps {
                assert_eq!(st.potential_after + 1, st.potential_before);
            }
            if steps.len() == 1 {
                assert!(diagrams_isomorphic(&out, &target));
            } else {
                assert!(steps.is_empty());
                assert!(diagrams_isomorphic(&out, &d));
            }
            move_counts.push(steps.len());
        }
        assert!(move_counts.contains(&1), "one base makes the single move");
        assert!(move_counts.contains(&0), "the other is already normalized");
    }

    #[test]
    fn decompose_full_twist_with_doubled_row() {
        // a positive braid containing the full twist on four strands
        let d = parse_braid("4: 3 2 1 3 2 1 3 2 1 1 3 2 1").unwrap();
        let cache = PolyCache::new();
        let cert = decompose_positive(&d, &cache).unwrap();
        let script = cert.script().expect("full-twist braids realize the bound");
        assert!(verify(script, &d).unwrap());
    }

    #[test]
    fn no_nested_star_and_clasp() {
        let _cache = PolyCache::new();
        // the fixture of the castle tests: two clasps onto one middle circle
        let star = crate::parse_pd(crate::castle::TRAPPED_PD).unwrap();
        let script = decompose_no_nested(&star).unwrap();
        assert_eq!(script.moves.len(), 2);
        assert!(script.moves.iter().all(|m| matches!(m, Move::Shackle { .. })));
        assert!(verify(&script, &star).unwrap());

        let h = parse_braid("2: 1 1").unwrap();
        let script = decompose_no_nested(&h).unwrap();
        assert_eq!(script.moves.len(), 1);
        assert!(verify(&script, &h).unwrap());

        let t = parse_braid("2: 1 1 1").unwrap();
        let script = decompose_no_nested(&t).unwrap();
        assert_eq!(script.moves.len(), 2);
        assert!(matches!(script.moves[0], Move::Shackle { .. }));
        assert!(matches!(script.moves[1], Move::Double { .. }));
        assert!(verify(&script, &t).unwrap());
    }

    #[test]
    fn no_nested_rejects_nested_and_lone() {
        let _cache = PolyCache::new();
        let t35 = parse_braid("3: 1 2 1 2 1 2 1 2 1 2").unwrap();
        assert!(matches!(
            decompose_no_nested(&t35),
            Err(Error::Precondition(_))
        ));
        let u = parse_braid("3: 1 2").unwrap();
        assert!(matches!(
            decompose_no_nested(&u),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn script_json_round_trip() {
        let t = parse_braid("2: 1 1 1").unwrap();
        let cert = decompose_positive(&t, &PolyCache::new()).unwrap();
        let script = cert.script().unwrap();
        let text = serde_json::to_string(script).unwrap();
        let back: MoveScript = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, script);
        assert!(verify(&back, &t).unwrap());
    }
}
