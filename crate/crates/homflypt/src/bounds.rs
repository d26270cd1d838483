//! The degree inequalities the polynomial imposes on a diagram, with
//! sharpness flags and the complexity measures derived from them.
//!
//! With `Cr` crossings, writhe `ω`, `s` Seifert circles and the polynomial
//! `P`:
//!
//! * upper:  `deg_z⁺ P ≤ Cr - s + 1`
//! * left:   `ω - s + 1 ≤ deg_a⁻ P`
//! * right:  `deg_a⁺ P ≤ ω + s - 1`
//! * circles: `(deg_a⁺ - deg_a⁻)/2 + 1 ≤ s` (a braid index bound)
//! * crossings: `deg_z⁺ + (deg_a⁺ - deg_a⁻)/2 ≤ Cr`
//!
//! The crossing bound is sharp exactly when upper, left, and right all are.
//! The halved lines are reported doubled so everything stays in integers.

use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::poly::LaurentPoly2;
use crate::resolve::{homfly_coherent, PolyCache};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub lhs: i64,
    pub rhs: i64,
    pub sharp: bool,
}

fn ineq(lhs: i64, rhs: i64) -> Inequality {
    Inequality { lhs, rhs, sharp: lhs == rhs }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub crossing_count: usize,
    pub writhe: i64,
    pub seifert_circles: usize,
    pub components: usize,
    pub deg_z_max: i64,
    pub deg_a_max: i64,
    pub deg_a_min: i64,
    /// Top z-degree of the Conway specialization; absent when it vanishes
    /// (split links).
    pub conway_deg_z_max: Option<i64>,
    pub upper: Inequality,
    pub left: Inequality,
    pub right: Inequality,
    /// Both sides doubled.
    pub circle_bound: Inequality,
    /// Both sides doubled.
    pub crossing_bound: Inequality,
    pub self_linking: i64,
    pub braid_index_lower: i64,
    /// `2g` of the canonical surface: `2 - #L + Cr - s`.
    pub canonical_genus_double: i64,
    /// `deg_z⁺ ∇ - #L + 1`, a lower bound for twice the minimal genus.
    pub conway_genus_witness: Option<i64>,
}

impl BoundsReport {
    pub fn all_bounds_hold(&self) -> bool {
        self.upper.lhs <= self.upper.rhs
            && self.left.lhs <= self.left.rhs
            && self.right.lhs <= self.right.rhs
            && self.circle_bound.lhs <= self.circle_bound.rhs
            && self.crossing_bound.lhs <= self.crossing_bound.rhs
    }

    /// The crossing bound is sharp exactly when the three degree bounds are.
    pub fn crossing_bound_consistency(&self) -> bool {
        self.crossing_bound.sharp == (self.upper.sharp && self.left.sharp && self.right.sharp)
    }
}

/// Evaluates every bound from one polynomial computation.
pub fn bounds_report(d: &LinkDiagram, cache: &PolyCache) -> BoundsReport {
    let p = homfly_coherent(d, cache);
    report_from_poly(d, &p)
}

pub fn report_from_poly(d: &LinkDiagram, p: &LaurentPoly2) -> BoundsReport {
    let deg = p.degrees().expect("nonempty links have nonzero polynomials");
    let cr = d.crossing_count() as i64;
    let w = d.writhe();
    let s = d.seifert_circle_count() as i64;
    let comps = d.component_count() as i64;
    let spread = deg.a_max - deg.a_min;
    debug_assert_eq!(spread.rem_euclid(2), 0, "a-degrees share one parity");
    let conway = p.substitute_a_one();
    let conway_deg = conway.keys().next_back().copied();
    BoundsReport {
        crossing_count: d.crossing_count(),
        writhe: w,
        seifert_circles: d.seifert_circle_count(),
        components: d.component_count(),
        deg_z_max: deg.z_max,
        deg_a_max: deg.a_max,
        deg_a_min: deg.a_min,
        conway_deg_z_max: conway_deg,
        upper: ineq(deg.z_max, cr - s + 1),
        left: ineq(w - s + 1, deg.a_min),
        right: ineq(deg.a_max, w + s - 1),
        circle_bound: ineq(spread + 2, 2 * s),
        crossing_bound: ineq(2 * deg.z_max + spread, 2 * cr),
        self_linking: w - s,
        braid_index_lower: spread / 2 + 1,
        canonical_genus_double: 2 - comps + cr - s,
        conway_genus_witness: conway_deg.map(|dz| dz - comps + 1),
    }
}

/// Sharpness of the right bound alone, the quantity the decomposition
/// procedure is organized around.
pub fn right_bound_sharp(d: &LinkDiagram, cache: &PolyCache) -> bool {
    let p = homfly_coherent(d, cache);
    let deg = p.degrees().expect("nonempty diagram");
    deg.a_max == d.writhe() + d.seifert_circle_count() as i64 - 1
}

#[derive(Debug, Clone, Serialize)]
pub struct PositiveEqualities {
    pub upper_sharp: bool,
    pub left_sharp: bool,
    /// `deg_z⁺ ∇ - #L + 1` against the canonical genus, both recorded;
    /// whether the witness equals `g` or `2g` is reported, not asserted.
    pub conway_genus_witness: Option<i64>,
    pub canonical_genus_double: i64,
    pub witness_equals_genus: Option<bool>,
    pub witness_equals_genus_double: Option<bool>,
}

/// For positive diagrams the upper and left bounds are always sharp; this
/// checks them and records the Conway-degree genus witness.
pub fn positive_equalities_check(d: &LinkDiagram, cache: &PolyCache) -> Result<PositiveEqualities> {
    if !d.is_positive() {
        return Err(Error::NotPositive);
    }
    let report = bounds_report(d, cache);
    assert!(report.upper.sharp, "the upper bound is an equality on positive diagrams");
    assert!(report.left.sharp, "the left bound is an equality on positive diagrams");
    Ok(PositiveEqualities {
        upper_sharp: report.upper.sharp,
        left_sharp: report.left.sharp,
        conway_genus_witness: report.conway_genus_witness,
        canonical_genus_double: report.canonical_genus_double,
        witness_equals_genus: report
            .conway_genus_witness
            .map(|w| 2 * w == report.canonical_genus_double),
        witness_equals_genus_double: report
            .conway_genus_witness
            .map(|w| w == report.canonical_genus_double),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid::parse_braid;

    #[test]
    fn torus35_all_sharp() {
        let t = parse_braid("3: 1 2 1 2 1 2 1 2 1 2").unwrap();
        let r = bounds_report(&t, &PolyCache::new());
        assert_eq!(r.deg_z_max, 8);
        assert_eq!(r.upper, Inequality { lhs: 8, rhs: 8, sharp: true });
        assert_eq!(r.left, Inequality { lhs: 8, rhs: 8, sharp: true });
        assert_eq!(r.right, Inequality { lhs: 12, rhs: 12, sharp: true });
        assert!(r.circle_bound.sharp && r.crossing_bound.sharp);
        assert_eq!(r.braid_index_lower, 3);
        assert_eq!(r.self_linking, 7);
        assert!(r.all_bounds_hold() && r.crossing_bound_consistency());
    }

    #[test]
    fn unknot_closure_right_bound_slack() {
        let u = parse_braid("3: 1 2").unwrap();
        let r = bounds_report(&u, &PolyCache::new());
        assert_eq!(r.right, Inequality { lhs: 0, rhs: 4, sharp: false });
        assert!(r.upper.sharp && r.left.sharp);
        assert!(!r.crossing_bound.sharp);
        assert!(r.crossing_bound_consistency());
    }

    #[test]
    fn hopf_bounds() {
        let h = parse_braid("2: 1 1").unwrap();
        let r = bounds_report(&h, &PolyCache::new());
        assert_eq!(r.right, Inequality { lhs: 3, rhs: 3, sharp: true });
        assert_eq!(r.left, Inequality { lhs: 1, rhs: 1, sharp: true });
        assert_eq!(r.upper, Inequality { lhs: 1, rhs: 1, sharp: true });
        assert!(r.crossing_bound.sharp);
    }

    #[test]
    fn bounds_hold_on_mixed_words() {
        let cache = PolyCache::new();
        for word in ["3: 1 -2 1", "3: -1 -2 -1 -2", "4: 1 2 -3 2 1", "2: 1 -1"] {
            let d = parse_braid(word).unwrap();
            let r = bounds_report(&d, &cache);
            assert!(r.all_bounds_hold(), "{word}");
            assert!(r.crossing_bound_consistency(), "{word}");
        }
    }

    #[test]
    fn positive_equalities() {
        let cache = PolyCache::new();
        for word in ["2: 1 1", "3: 1 2", "3: 1 2 1 2 1 2 1 2 1 2", "3: 1 2 2 1"] {
            let d = parse_braid(word).unwrap();
            let eq = positive_equalities_check(&d, &cache).unwrap();
            assert!(eq.upper_sharp && eq.left_sharp, "{word}");
        }
        let neg = parse_braid("2: -1 -1").unwrap();
        assert!(matches!(
            positive_equalities_check(&neg, &cache),
            Err(Error::NotPositive)
        ));
    }

    #[test]
    fn trivial_circle_shifts_both_sides_of_right_bound() {
        let cache = PolyCache::new();
        let h = parse_braid("2: 1 1").unwrap();
        let h1 = h.with_trivial_components(1);
        let r0 = bounds_report(&h, &cache);
        let r1 = bounds_report(&h1, &cache);
        assert!(r0.right.sharp && r1.right.sharp);
        assert_eq!(r1.right.lhs, r0.right.lhs + 1);
        assert_eq!(r1.right.rhs, r0.right.rhs + 1);
        assert_eq!(
            right_bound_sharp(&h, &cache),
            right_bound_sharp(&h1, &cache)
        );
    }

    #[test]
    fn mirror_duality_right_left() {
        let cache = PolyCache::new();
        for word in ["2: 1 1", "3: 1 2 1 2 1 2", "3: 1 2 2 1"] {
            let d = parse_braid(word).unwrap();
            let r = bounds_report(&d, &cache);
            let m = bounds_report(&d.mirror(), &cache);
            assert_eq!(r.right.sharp, m.left.sharp, "{word}");
            assert_eq!(r.left.sharp, m.right.sharp, "{word}");
        }
    }
}
