//! Finite inverse semigroups as a carrier with product and inverse tables.
//!
//! The tables are the single source of algebraic truth; partial bijections
//! and labels ride along for reporting and cross-checks. Two constructions
//! are provided: closing a set of partial bijections under composition and
//! inversion, and validating a bare Cayley table.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::pbij::{PartialBijection, PbijError};

/// Index of an element in a fixed carrier list. Stable for the lifetime of
/// the semigroup value that issued it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(pub u32);

impl ElementId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Default cap on closure size. Generous for intended use (the degree-5
/// symmetric inverse monoid has 1546 elements); it exists to stop
/// pathological generator sets, not normal ones.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// Rejection reasons for semigroup construction and table validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("product table row {row} has {got} entries, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("index out of range at ({row},{col}): entry {value} with size {size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("inverse table has {got} entries, expected {expected}")]
    InverseLength { expected: usize, got: usize },
    #[error("inverse of {element} is {value}, not in 0..{size}")]
    InverseOutOfRange {
        element: usize,
        value: usize,
        size: usize,
    },
    #[error("label count {got} does not match size {expected}")]
    LabelCount { expected: usize, got: usize },
    #[error("not associative at ({a},{b},{c}): ({a}{b}){c} != {a}({b}{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("idempotents do not commute: ({e},{f})")]
    IdempotentsDoNotCommute { e: usize, f: usize },
    #[error("element {element} has no generalized inverse")]
    NotRegular { element: usize },
    #[error("element {element} has several generalized inverses, e.g. {first} and {second}")]
    AmbiguousInverse {
        element: usize,
        first: usize,
        second: usize,
    },
    #[error("inverse table entry for {element} violates s s⁻¹ s = s, s⁻¹ s s⁻¹ = s⁻¹ or the involution")]
    InvalidInverse { element: usize },
    #[error("not commutative: {x}·{y} != {y}·{x}")]
    NotCommutative { x: usize, y: usize },
    #[error("not idempotent: {x}·{x} != {x}")]
    NotIdempotent { x: usize },
    #[error("closure exceeded the element cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("no generators given")]
    EmptyGenerators,
    #[error(transparent)]
    Pbij(#[from] PbijError),
}

/// A finite inverse semigroup: carrier `{0, .., size-1}` with a product
/// table and an inverse table, validated or correct by construction.
///
/// Values are immutable once built and safe to share across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct InverseSemigroup {
    size: usize,
    product: Vec<u32>, // row-major size×size
    inverse: Vec<u32>,
    labels: Option<Vec<String>>,
    bijections: Option<Vec<PartialBijection>>,
}

impl fmt::Debug for InverseSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InverseSemigroup(size={})", self.size)
    }
}

impl InverseSemigroup {
    /// Validates a Cayley table and (optionally) an inverse table.
    ///
    /// Checks, in order: table shape and ranges, associativity, commuting
    /// idempotents, and the inverse laws. When the inverse table is omitted
    /// the unique generalized inverse of each element is derived; a missing
    /// or ambiguous inverse is an error rather than a silent pick.
    pub fn from_cayley_table(
        product_rows: &[Vec<usize>],
        inverse: Option<&[usize]>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, BuildError> {
        let size = product_rows.len();
        for (row, entries) in product_rows.iter().enumerate() {
            if entries.len() != size {
                return Err(BuildError::RowLength {
                    row,
                    expected: size,
                    got: entries.len(),
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= size {
                    return Err(BuildError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        size,
                    });
                }
            }
        }
        if let Some(ls) = &labels {
            if ls.len() != size {
                return Err(BuildError::LabelCount {
                    expected: size,
                    got: ls.len(),
                });
            }
        }

        let product: Vec<u32> = product_rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| v as u32))
            .collect();
        let mul = |a: usize, b: usize| product[a * size + b] as usize;

        for a in 0..size {
            for b in 0..size {
                let ab = mul(a, b);
                for c in 0..size {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(BuildError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        let idempotents: Vec<usize> = (0..size).filter(|&e| mul(e, e) == e).collect();
        for (i, &e) in idempotents.iter().enumerate() {
            for &f in &idempotents[i + 1..] {
                if mul(e, f) != mul(f, e) {
                    return Err(BuildError::IdempotentsDoNotCommute { e, f });
                }
            }
        }

        let inverse: Vec<u32> = match inverse {
            Some(given) => {
                if given.len() != size {
                    return Err(BuildError::InverseLength {
                        expected: size,
                        got: given.len(),
                    });
                }
                for (element, &value) in given.iter().enumerate() {
                    if value >= size {
                        return Err(BuildError::InverseOutOfRange {
                            element,
                            value,
                            size,
                        });
                    }
                }
                for (s, &t) in given.iter().enumerate() {
                    let sts = mul(mul(s, t), s);
                    let tst = mul(mul(t, s), t);
                    if sts != s || tst != t || given[t] as usize != s {
                        return Err(BuildError::InvalidInverse { element: s });
                    }
                }
                given.iter().map(|&v| v as u32).collect()
            }
            None => {
                let mut derived = Vec::with_capacity(size);
                for s in 0..size {
                    let mut candidates =
                        (0..size).filter(|&t| mul(mul(s, t), s) == s && mul(mul(t, s), t) == t);
                    let first = candidates
                        .next()
                        .ok_or(BuildError::NotRegular { element: s })?;
                    if let Some(second) = candidates.next() {
                        return Err(BuildError::AmbiguousInverse {
                            element: s,
                            first,
                            second,
                        });
                    }
                    derived.push(first as u32);
                }
                derived
            }
        };

        Ok(Self {
            size,
            product,
            inverse,
            labels,
            bijections: None,
        })
    }

    /// Builds the smallest inverse semigroup of partial bijections containing
    /// the generators, with the default element cap.
    pub fn close_under_ops(generators: &[PartialBijection]) -> Result<Self, BuildError> {
        Self::close_under_ops_with_cap(generators, DEFAULT_CLOSURE_CAP)
    }

    /// As [`close_under_ops`](Self::close_under_ops) with an explicit cap.
    ///
    /// Carrier order is deterministic: generators first in input order, then
    /// breadth-first layers, each layer sorted in the canonical element
    /// order.
    pub fn close_under_ops_with_cap(
        generators: &[PartialBijection],
        cap: usize,
    ) -> Result<Self, BuildError> {
        if generators.is_empty() {
            return Err(BuildError::EmptyGenerators);
        }
        let degree = generators[0].degree();
        for g in generators {
            if g.degree() != degree {
                return Err(PbijError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                }
                .into());
            }
        }

        let mut carrier: Vec<PartialBijection> = Vec::new();
        let mut index: HashMap<PartialBijection, usize> = HashMap::new();
        for g in generators {
            if !index.contains_key(g) {
                index.insert(g.clone(), carrier.len());
                carrier.push(g.clone());
            }
        }

        let mut frontier_start = 0;
        while frontier_start < carrier.len() {
            let frontier_end = carrier.len();
            let mut discovered: BTreeSet<PartialBijection> = BTreeSet::new();
            let mut consider = |p: PartialBijection,
                                index: &HashMap<PartialBijection, usize>| {
                if !index.contains_key(&p) {
                    discovered.insert(p);
                }
            };
            for i in frontier_start..frontier_end {
                consider(carrier[i].invert(), &index);
                // products touching at least one frontier element; older
                // pairs were handled in earlier rounds
                for j in 0..frontier_end {
                    consider(carrier[i].compose(&carrier[j]).expect("equal degrees"), &index);
                    if j < frontier_start {
                        consider(carrier[j].compose(&carrier[i]).expect("equal degrees"), &index);
                    }
                }
            }
            for p in discovered {
                index.insert(p.clone(), carrier.len());
                carrier.push(p);
                if carrier.len() > cap {
                    return Err(BuildError::CapExceeded { cap });
                }
            }
            frontier_start = frontier_end;
        }

        let size = carrier.len();
        let mut product = vec![0u32; size * size];
        for (a, pa) in carrier.iter().enumerate() {
            for (b, pb) in carrier.iter().enumerate() {
                let c = pa.compose(pb).expect("equal degrees");
                product[a * size + b] = index[&c] as u32;
            }
        }
        let inverse: Vec<u32> = carrier.iter().map(|p| index[&p.invert()] as u32).collect();
        let labels = carrier.iter().map(|p| p.to_string()).collect();

        Ok(Self {
            size,
            product,
            inverse,
            labels: Some(labels),
            bijections: Some(carrier),
        })
    }

    /// Internal constructor for tables that are correct by construction.
    pub(crate) fn from_tables_unchecked(
        size: usize,
        product: Vec<u32>,
        inverse: Vec<u32>,
        labels: Option<Vec<String>>,
        bijections: Option<Vec<PartialBijection>>,
    ) -> Self {
        debug_assert_eq!(product.len(), size * size);
        debug_assert_eq!(inverse.len(), size);
        Self {
            size,
            product,
            inverse,
            labels,
            bijections,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Checked id for a raw index.
    pub fn element(&self, index: usize) -> Option<ElementId> {
        (index < self.size).then(|| ElementId(index as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size as u32).map(ElementId)
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.product[a.index() * self.size + b.index()])
    }

    pub fn inv(&self, a: ElementId) -> ElementId {
        ElementId(self.inverse[a.index()])
    }

    pub fn is_idempotent(&self, e: ElementId) -> bool {
        self.mul(e, e) == e
    }

    /// The idempotents, in carrier order. The result is checked to be closed
    /// under the product (it is the meet-semilattice E(S)).
    pub fn idempotents(&self) -> Vec<ElementId> {
        let es: Vec<ElementId> = self.elements().filter(|&e| self.is_idempotent(e)).collect();
        for &e in &es {
            for &f in &es {
                assert!(
                    self.is_idempotent(self.mul(e, f)),
                    "idempotents are not closed under product"
                );
            }
        }
        es
    }

    /// The defining form of the natural partial order: `s <= t` iff
    /// `s = (s s⁻¹) t`.
    pub fn natural_leq(&self, s: ElementId, t: ElementId) -> bool {
        self.mul(self.mul(s, self.inv(s)), t) == s
    }

    /// Display label for an element: the stored label, or `e<i>`.
    pub fn label(&self, e: ElementId) -> String {
        match &self.labels {
            Some(ls) => ls[e.index()].clone(),
            None => format!("e{}", e.0),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Concrete partial-bijection carrier, when this semigroup was built
    /// from one.
    pub fn bijections(&self) -> Option<&[PartialBijection]> {
        self.bijections.as_deref()
    }

    /// Product table as nested rows (row-major), for serialization and
    /// re-validation.
    pub fn product_table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|a| {
                (0..self.size)
                    .map(|b| self.product[a * self.size + b] as usize)
                    .collect()
            })
            .collect()
    }

    pub fn inverse_table(&self) -> Vec<usize> {
        self.inverse.iter().map(|&v| v as usize).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pb(images: &[isize]) -> PartialBijection {
        PartialBijection::new(
            images
                .iter()
                .map(|&i| if i < 0 { None } else { Some(i as usize) })
                .collect(),
        )
        .unwrap()
    }

    /// Independent enumeration of all injective partial self-maps on
    /// `{0,..,n-1}`: choose the image of each point one at a time.
    fn brute_partial_bijections(n: usize) -> Vec<PartialBijection> {
        fn go(n: usize, images: &mut Vec<Option<usize>>, out: &mut Vec<PartialBijection>) {
            if images.len() == n {
                out.push(PartialBijection::new(images.clone()).unwrap());
                return;
            }
            images.push(None);
            go(n, images, out);
            images.pop();
            for v in 0..n {
                if !images.contains(&Some(v)) {
                    images.push(Some(v));
                    go(n, images, out);
                    images.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let s = InverseSemigroup::close_under_ops(&[PartialBijection::identity(2)]).unwrap();
        assert_eq!(s.size(), 1);
    }

    #[test]
    fn closure_of_swap_is_the_two_element_group() {
        let s = InverseSemigroup::close_under_ops(&[pb(&[1, 0])]).unwrap();
        assert_eq!(s.size(), 2);
        let ids: Vec<_> = s.idempotents();
        assert_eq!(ids.len(), 1);
    }

    #[test]
    fn closure_of_swap_and_restriction_is_all_of_degree_two() {
        let s = InverseSemigroup::close_under_ops(&[pb(&[1, 0]), pb(&[0, -1])]).unwrap();
        assert_eq!(s.size(), 7);
        let mut got: Vec<_> = s.bijections().unwrap().to_vec();
        got.sort();
        let mut expected = brute_partial_bijections(2);
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn closure_respects_the_cap() {
        let err =
            InverseSemigroup::close_under_ops_with_cap(&[pb(&[1, 0]), pb(&[0, -1])], 3).unwrap_err();
        assert_eq!(err, BuildError::CapExceeded { cap: 3 });
        assert!(err.to_string().contains('3'), "failure names the cap");
    }

    #[test]
    fn closure_rejects_empty_and_mixed_degree_generators() {
        assert_eq!(
            InverseSemigroup::close_under_ops(&[]).unwrap_err(),
            BuildError::EmptyGenerators
        );
        let err = InverseSemigroup::close_under_ops(&[
            PartialBijection::identity(2),
            PartialBijection::identity(3),
        ])
        .unwrap_err();
        assert!(matches!(err, BuildError::Pbij(PbijError::DegreeMismatch { .. })));
    }

    #[test]
    fn table_and_model_agree_on_every_pair() {
        let s = InverseSemigroup::close_under_ops(&[pb(&[1, 0]), pb(&[0, -1])]).unwrap();
        let carrier = s.bijections().unwrap();
        for a in s.elements() {
            assert_eq!(carrier[s.inv(a).index()], carrier[a.index()].invert());
            for b in s.elements() {
                let via_table = &carrier[s.mul(a, b).index()];
                let via_model = carrier[a.index()].compose(&carrier[b.index()]).unwrap();
                assert_eq!(*via_table, via_model);
            }
        }
    }

    #[test]
    fn trivial_table_is_accepted() {
        let s = InverseSemigroup::from_cayley_table(&[vec![0]], None, None).unwrap();
        assert_eq!(s.size(), 1);
        assert_eq!(s.inverse_table(), vec![0]);
    }

    #[test]
    fn left_zero_table_is_rejected_for_noncommuting_idempotents() {
        // product(a,b) = a: both elements idempotent, ab = a != b = ba
        let err =
            InverseSemigroup::from_cayley_table(&[vec![0, 0], vec![1, 1]], None, None).unwrap_err();
        assert_eq!(err, BuildError::IdempotentsDoNotCommute { e: 0, f: 1 });
        assert_eq!(err.to_string(), "idempotents do not commute: (0,1)");
    }

    #[test]
    fn cyclic_group_table_derives_negation_as_inverse() {
        let table: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect();
        // oracle: the group axioms pin inverse(k) = (3 - k) % 3
        let s = InverseSemigroup::from_cayley_table(&table, None, None).unwrap();
        assert_eq!(s.inverse_table(), vec![0, 2, 1]);
    }

    #[test]
    fn non_associative_table_reports_a_triple() {
        // subtraction mod 3 is not associative
        let table: Vec<Vec<usize>> =
            (0..3).map(|i: usize| (0..3).map(|j: usize| (3 + i - j) % 3).collect()).collect();
        let err = InverseSemigroup::from_cayley_table(&table, None, None).unwrap_err();
        assert!(matches!(err, BuildError::NotAssociative { .. }));
    }

    #[test]
    fn out_of_range_entry_is_located() {
        let err =
            InverseSemigroup::from_cayley_table(&[vec![0, 0], vec![0, 2]], None, None).unwrap_err();
        assert_eq!(
            err,
            BuildError::EntryOutOfRange {
                row: 1,
                col: 1,
                value: 2,
                size: 2
            }
        );
        assert!(err.to_string().starts_with("index out of range at (1,1)"));
    }

    #[test]
    fn provided_inverse_table_is_checked() {
        let table: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect();
        let s = InverseSemigroup::from_cayley_table(&table, Some(&[0, 2, 1]), None).unwrap();
        assert_eq!(s.inverse_table(), vec![0, 2, 1]);
        let err =
            InverseSemigroup::from_cayley_table(&table, Some(&[0, 1, 2]), None).unwrap_err();
        assert_eq!(err, BuildError::InvalidInverse { element: 1 });
    }

    #[test]
    fn idempotents_of_degree_two_are_the_partial_identities() {
        let s = InverseSemigroup::close_under_ops(&[pb(&[1, 0]), pb(&[0, -1])]).unwrap();
        let carrier = s.bijections().unwrap();
        let mut got: Vec<_> = s
            .idempotents()
            .into_iter()
            .map(|e| carrier[e.index()].clone())
            .collect();
        got.sort();
        // oracle scan of the brute enumeration: exactly the partial identities
        let mut expected: Vec<_> = brute_partial_bijections(2)
            .into_iter()
            .filter(|p| p.compose(p).unwrap() == *p)
            .collect();
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|p| p.is_partial_identity()));
    }

    #[test]
    fn inverse_is_an_involution_and_antihomomorphism() {
        let s = InverseSemigroup::close_under_ops(&[pb(&[1, 0]), pb(&[0, -1])]).unwrap();
        for a in s.elements() {
            assert_eq!(s.inv(s.inv(a)), a);
            for b in s.elements() {
                assert_eq!(s.inv(s.mul(a, b)), s.mul(s.inv(b), s.inv(a)));
            }
        }
    }
}
