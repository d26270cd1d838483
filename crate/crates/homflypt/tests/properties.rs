//! Structural invariants over randomized inputs.

use proptest::prelude::*;

use homflypt::bounds::right_bound_sharp;
use homflypt::decompose::{apply_double, apply_shackle, find_double_regions, Side, StrandRef};
use homflypt::diagram::braid::closure;
use homflypt::poly::LaurentPoly2;
use homflypt::resolve::{homfly_oracle, PolyCache};
use homflypt::seifert::SeifertStructure;
use homflypt::{diagrams_isomorphic, parse_pd, serialize_pd};

fn braid_word() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (2usize..=4).prop_flat_map(|strands| {
        let letters = prop::collection::vec(
            (1..strands as i64, prop::bool::ANY)
                .prop_map(|(i, neg)| if neg { -i } else { i }),
            1..=8,
        );
        (Just(strands), letters)
    })
}

fn positive_word() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (2usize..=4).prop_flat_map(|strands| {
        let letters = prop::collection::vec(1..strands as i64, 1..=8);
        (Just(strands), letters)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn embeddings_stay_spherical((strands, letters) in braid_word()) {
        let d = closure(strands, &letters);
        prop_assert!(d.validate().is_ok());
        // smoothing and flipping preserve the embedding
        for c in 0..d.crossing_count() {
            prop_assert!(d.flip_crossing(c).unwrap().validate().is_ok());
            prop_assert!(d.smooth_crossing(c).unwrap().0.validate().is_ok());
        }
    }

    #[test]
    fn seifert_graph_bipartite_and_sides_partition((strands, letters) in braid_word()) {
        let d = closure(strands, &letters);
        let s = SeifertStructure::new(&d);
        prop_assert!(s.is_bipartite());
        for i in 0..s.circle_count() {
            prop_assert_eq!(
                s.left_set(i).len() + s.right_set(i).len(),
                s.circle_count() - 1
            );
        }
    }

    #[test]
    fn smooth_and_flip_commute_with_mirror((strands, letters) in braid_word()) {
        let d = closure(strands, &letters);
        for c in 0..d.crossing_count() {
            let a = d.mirror().smooth_crossing(c).unwrap().0;
            let b = d.smooth_crossing(c).unwrap().0.mirror();
            prop_assert_eq!(a, b);
            let fa = d.mirror().flip_crossing(c).unwrap();
            let fb = d.flip_crossing(c).unwrap().mirror();
            prop_assert_eq!(fa, fb);
        }
    }

    #[test]
    fn skein_relation_at_random_crossings((strands, letters) in braid_word(), pick in 0usize..64) {
        let cache = PolyCache::new();
        let d = closure(strands, &letters);
        let c = pick % d.crossing_count();
        let (plus, minus) = match d.crossings()[c].sign {
            homflypt::diagram::Sign::Positive => (d.clone(), d.flip_crossing(c).unwrap()),
            homflypt::diagram::Sign::Negative => (d.flip_crossing(c).unwrap(), d.clone()),
        };
        let zero = d.smooth_crossing(c).unwrap().0;
        // a^{-1} P(D+) - a P(D-) = z P(D0)
        let lhs = homfly_oracle(&plus, &cache)
            .scale_by_monomial(-1, 0, 1)
            .sub(&homfly_oracle(&minus, &cache).scale_by_monomial(1, 0, 1));
        let rhs = homfly_oracle(&zero, &cache).scale_by_monomial(0, 1, 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn markov_stabilization_preserves_polynomial((strands, letters) in braid_word()) {
        let cache = PolyCache::new();
        let d = closure(strands, &letters);
        let mut stabilized = letters.clone();
        stabilized.push(strands as i64);
        let s = closure(strands + 1, &stabilized);
        prop_assert_eq!(homfly_oracle(&d, &cache), homfly_oracle(&s, &cache));
    }

    #[test]
    fn strand_cycles_stable_under_relabeling((strands, letters) in braid_word()) {
        let d = closure(strands, &letters);
        let back = parse_pd(&serialize_pd(&d)).unwrap();
        prop_assert!(diagrams_isomorphic(&d, &back));
        prop_assert_eq!(d.component_count(), back.component_count());
        prop_assert_eq!(d.seifert_circle_count(), back.seifert_circle_count());
    }

    #[test]
    fn canonical_code_invariant_under_relabeling(
        (strands, letters) in braid_word(),
        seed in 0u64..1000,
    ) {
        use homflypt::diagram::{Arc as DArc, Crossing, EndPoint, LinkDiagram};
        let d = closure(strands, &letters);
        // build an isomorphic copy by permuting crossing and arc ids
        let n = d.crossing_count();
        let m = d.arc_count();
        let mut cperm: Vec<usize> = (0..n).collect();
        let mut aperm: Vec<usize> = (0..m).collect();
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for i in (1..n).rev() {
            cperm.swap(i, next() % (i + 1));
        }
        for i in (1..m).rev() {
            aperm.swap(i, next() % (i + 1));
        }
        let remap = |e: EndPoint| EndPoint::new(cperm[e.crossing], e.slot);
        let mut crossings = vec![Crossing { sign: homflypt::Sign::Positive, slots: [0; 4] }; n];
        for (old, c) in d.crossings().iter().enumerate() {
            crossings[cperm[old]] = Crossing {
                sign: c.sign,
                slots: core::array::from_fn(|s| aperm[c.slots[s]]),
            };
        }
        let mut arcs = vec![DArc { tail: EndPoint::new(0, 0), head: EndPoint::new(0, 0) }; m];
        for (old, a) in d.arcs().iter().enumerate() {
            arcs[aperm[old]] = DArc { tail: remap(a.tail), head: remap(a.head) };
        }
        let copy = LinkDiagram::new(crossings, arcs, d.trivial_components()).unwrap();
        prop_assert!(diagrams_isomorphic(&d, &copy));
        prop_assert_eq!(homflypt::canonical_code(&d), homflypt::canonical_code(&copy));
    }

    #[test]
    fn mirror_substitution_involution(terms in prop::collection::vec(((-6i64..6, -6i64..6), -9i64..9), 0..12)) {
        let mut p = LaurentPoly2::zero();
        for ((a, z), c) in terms {
            p.add_term(a, z, c.into());
        }
        prop_assert_eq!(p.substitute_mirror().substitute_mirror(), p);
    }

    #[test]
    fn positive_product_degrees_add((s1, w1) in positive_word(), (s2, w2) in positive_word()) {
        let cache = PolyCache::new();
        let p = homfly_oracle(&closure(s1, &w1), &cache);
        let q = homfly_oracle(&closure(s2, &w2), &cache);
        let (dp, dq) = (p.degrees().unwrap(), q.degrees().unwrap());
        let prod = p.mul(&q).degrees().unwrap();
        // top a-lines of positive diagrams are single-signed, so the
        // extremes cannot cancel
        prop_assert_eq!(prod.a_max, dp.a_max + dq.a_max);
        prop_assert_eq!(prod.a_min, dp.a_min + dq.a_min);
    }

    #[test]
    fn doubling_triple_skein_and_sharpness((strands, letters) in positive_word(), pick in 0usize..64) {
        let cache = PolyCache::new();
        let d = closure(strands, &letters);
        let c = pick % d.crossing_count();
        let (doubled, _) = apply_double(&d, c).unwrap();
        let (parallel, _) = d.smooth_crossing(c).unwrap();
        // P(XX) = a^2 P(||) + a z P(X) at the doubled site
        let lhs = homfly_oracle(&doubled, &cache);
        let rhs = homfly_oracle(&parallel, &cache)
            .scale_by_monomial(2, 0, 1)
            .add(&homfly_oracle(&d, &cache).scale_by_monomial(1, 1, 1));
        prop_assert_eq!(lhs, rhs);
        // the doubled diagram realizes the right bound exactly when one of
        // the smaller two does
        prop_assert_eq!(
            right_bound_sharp(&doubled, &cache),
            right_bound_sharp(&d, &cache) || right_bound_sharp(&parallel, &cache)
        );
    }

    #[test]
    fn shackle_skein((strands, letters) in positive_word(), pick in 0usize..64) {
        let cache = PolyCache::new();
        let d = closure(strands, &letters);
        let s = SeifertStructure::new(&d);
        // clasp a fresh circle onto an arc
        let with_circle = d.with_trivial_components(1);
        let a = pick % d.arc_count();
        let side = if pick % 2 == 0 { Side::Left } else { Side::Right };
        let (shackled, (_, top)) =
            apply_shackle(&with_circle, StrandRef::Arc(a), StrandRef::Trivial, side).unwrap();
        let _ = s;
        let (single, _) = shackled.smooth_crossing(top).unwrap();
        let lhs = homfly_oracle(&shackled, &cache);
        let rhs = homfly_oracle(&with_circle, &cache)
            .scale_by_monomial(2, 0, 1)
            .add(&homfly_oracle(&single, &cache).scale_by_monomial(1, 1, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn double_region_sites_reverse((strands, letters) in positive_word()) {
        let d = closure(strands, &letters);
        for (c, c2) in find_double_regions(&d) {
            // undoing the doubling and redoubling restores the diagram
            let (undone, _) = d.smooth_crossing(c2).unwrap();
            let c_in = if c2 < c { c - 1 } else { c };
            let (redone, _) = apply_double(&undone, c_in).unwrap();
            prop_assert!(diagrams_isomorphic(&redone, &d));
        }
    }
}
