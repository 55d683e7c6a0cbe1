//! Randomized invariants over the small rings.

use proptest::prelude::*;

use ringcode::code::{span, GeneratorMatrix};
use ringcode::gray::{builtin_gray, hamming_distance};
use ringcode::ring::{RingSpec, RingVector};
use ringcode::weights::{builtin_wf, distance, general_weight};

fn ring_strategy() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        Just(RingSpec::zmod(4).unwrap()),
        Just(RingSpec::zmod(6).unwrap()),
        Just(RingSpec::f2u()),
        Just(RingSpec::f2uv()),
        Just(RingSpec::prime_field(5).unwrap()),
    ]
}

fn vector_strategy(ring: RingSpec, max_len: usize) -> impl Strategy<Value = RingVector> {
    let m = ring.cardinality;
    prop::collection::vec(0..m, 0..=max_len)
        .prop_map(move |entries| RingVector::new(ring.clone(), entries).unwrap())
}

proptest! {
    #[test]
    fn element_text_round_trips(ring in ring_strategy(), code in 0u32..16) {
        let code = code % ring.cardinality;
        let s = ring.format_element(code);
        prop_assert_eq!(ring.parse_element(&s).unwrap(), code);
    }

    #[test]
    fn weight_additive_and_bounded(
        (a, b) in ring_strategy().prop_flat_map(|r| {
            (vector_strategy(r.clone(), 6), vector_strategy(r, 6))
        })
    ) {
        let wf = builtin_wf(&a.ring, "hamming").unwrap();
        let mut cat = a.entries.clone();
        cat.extend_from_slice(&b.entries);
        let cat = RingVector::new(a.ring.clone(), cat).unwrap();
        let wa = general_weight(&wf, &a).unwrap();
        let wb = general_weight(&wf, &b).unwrap();
        let wcat = general_weight(&wf, &cat).unwrap();
        prop_assert_eq!(wcat, wa.clone() + wb);
        // 0 <= w <= A*n
        let bound = wf.max_coeff() * ringcode::weights::rat(a.len() as i64);
        prop_assert!(wa >= ringcode::weights::rat(0));
        prop_assert!(wa <= bound);
    }

    #[test]
    fn distance_translation_invariant(
        (x, y, t) in ring_strategy().prop_flat_map(|r| {
            (
                vector_strategy(r.clone(), 4),
                vector_strategy(r.clone(), 4),
                vector_strategy(r, 4),
            )
        }).prop_filter("equal lengths", |(x, y, t)| x.len() == y.len() && y.len() == t.len())
    ) {
        let wf = builtin_wf(&x.ring, "hamming").unwrap();
        let lhs = distance(&wf, &x.add(&t).unwrap(), &y.add(&t).unwrap()).unwrap();
        let rhs = distance(&wf, &x, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn span_invariant_under_row_shuffle_and_duplication(
        rows in prop::collection::vec(prop::collection::vec(0u32..4, 2), 1..=2),
        dup in 0usize..2,
    ) {
        let z4 = RingSpec::zmod(4).unwrap();
        let g1 = GeneratorMatrix::new(z4.clone(), rows.clone()).unwrap();
        let mut shuffled = rows.clone();
        shuffled.reverse();
        if dup < rows.len() {
            shuffled.push(rows[dup].clone());
        }
        let g2 = GeneratorMatrix::new(z4, shuffled).unwrap();
        let c1 = span(&g1).unwrap();
        let c2 = span(&g2).unwrap();
        prop_assert_eq!(c1.codewords(), c2.codewords());
    }

    #[test]
    fn apply_commutes_with_concatenation(
        (v, w) in prop_oneof![
            Just(RingSpec::zmod(4).unwrap()),
            Just(RingSpec::f2u()),
            Just(RingSpec::f2uv()),
        ].prop_flat_map(|r| (vector_strategy(r.clone(), 4), vector_strategy(r, 4)))
    ) {
        let gm = builtin_gray(&v.ring, "standard").unwrap();
        let mut cat = v.entries.clone();
        cat.extend_from_slice(&w.entries);
        let cat = RingVector::new(v.ring.clone(), cat).unwrap();
        let mut joined = gm.apply(&v).unwrap();
        joined.extend(gm.apply(&w).unwrap());
        prop_assert_eq!(gm.apply(&cat).unwrap(), joined);
    }

    #[test]
    fn isometric_maps_preserve_vector_distances(
        (x, y) in prop_oneof![
            Just(RingSpec::zmod(4).unwrap()),
            Just(RingSpec::f2u()),
            Just(RingSpec::f2uv()),
        ].prop_flat_map(|r| {
            (vector_strategy(r.clone(), 2), vector_strategy(r, 2))
        }).prop_filter("equal lengths", |(x, y)| x.len() == y.len())
    ) {
        let wf = builtin_wf(&x.ring, "lee").unwrap();
        let mut gm = builtin_gray(&x.ring, "standard").unwrap();
        prop_assume!(gm.verify_isometric(&wf).unwrap());
        let img_d = hamming_distance(&gm.apply(&x).unwrap(), &gm.apply(&y).unwrap());
        let d = distance(&wf, &x, &y).unwrap();
        prop_assert_eq!(d, ringcode::weights::rat(img_d as i64));
    }
}
