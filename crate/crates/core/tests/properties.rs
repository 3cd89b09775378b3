//! Property tests for the element model and for table validation.

use proptest::prelude::*;

use isgkit::{InverseSemigroup, PartialBijection};

fn map_of_degree(degree: usize) -> impl Strategy<Value = PartialBijection> {
    proptest::collection::vec(proptest::option::of(0..degree.max(1)), degree).prop_filter_map(
        "images must be injective and in range",
        |images| PartialBijection::new(images).ok(),
    )
}

fn partial_bijection(max_degree: usize) -> impl Strategy<Value = PartialBijection> {
    (0..=max_degree).prop_flat_map(map_of_degree)
}

fn same_degree_pair(
    max_degree: usize,
) -> impl Strategy<Value = (PartialBijection, PartialBijection)> {
    (0..=max_degree).prop_flat_map(|d| (map_of_degree(d), map_of_degree(d)))
}

fn same_degree_triple(
    max_degree: usize,
) -> impl Strategy<Value = (PartialBijection, PartialBijection, PartialBijection)> {
    (0..=max_degree).prop_flat_map(|d| (map_of_degree(d), map_of_degree(d), map_of_degree(d)))
}

proptest! {
    #[test]
    fn invert_is_an_involution(p in partial_bijection(4)) {
        prop_assert_eq!(p.invert().invert(), p);
    }

    #[test]
    fn compose_then_invert_reverses((p, q) in same_degree_pair(4)) {
        let pq = p.compose(&q).unwrap();
        prop_assert_eq!(pq.invert(), q.invert().compose(&p.invert()).unwrap());
    }

    #[test]
    fn compose_is_associative((p, q, r) in same_degree_triple(4)) {
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn triple_product_recovers_the_map(p in partial_bijection(4)) {
        // s s⁻¹ s = s in the concrete model
        let back = p.compose(&p.invert()).unwrap().compose(&p).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn idempotents_are_exactly_the_partial_identities(p in partial_bijection(4)) {
        prop_assert_eq!(p.compose(&p).unwrap() == p, p.is_partial_identity());
    }

    #[test]
    fn intersection_is_a_common_restriction((p, q) in same_degree_pair(4)) {
        let r = p.intersection(&q);
        for point in 0..r.degree() {
            if let Some(v) = r.image(point) {
                prop_assert_eq!(p.image(point), Some(v));
                prop_assert_eq!(q.image(point), Some(v));
            }
        }
    }

    #[test]
    fn union_when_defined_extends_both((p, q) in same_degree_pair(4)) {
        if let Some(u) = p.union(&q) {
            for point in 0..u.degree() {
                for side in [&p, &q] {
                    if let Some(v) = side.image(point) {
                        prop_assert_eq!(u.image(point), Some(v));
                    }
                }
            }
        }
    }

    /// Arbitrary tables must be cleanly accepted or cleanly rejected.
    #[test]
    fn table_validation_never_panics(
        size in 1usize..=4,
        entries in proptest::collection::vec(0usize..8, 0..16),
    ) {
        let table: Vec<Vec<usize>> = (0..size)
            .map(|r| (0..size).map(|c| entries.get(r * size + c).copied().unwrap_or(0)).collect())
            .collect();
        let _ = InverseSemigroup::from_cayley_table(&table, None, None);
    }
}
