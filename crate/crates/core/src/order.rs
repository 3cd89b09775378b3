//! The natural partial order of an inverse semigroup and the join/meet
//! engines over it.
//!
//! Joins and meets are computed by explicit bound-set scans against a
//! precomputed relation matrix. That is O(|S|·|X|) per query, which is the
//! right trade at the carrier sizes this crate targets: correctness over
//! cleverness, and the scans double as diagnostics (nonexistence results
//! carry the bound set that lacked an extremum).

use std::fmt;

use crate::semigroup::{ElementId, InverseSemigroup};

/// Why a join or meet does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonexistenceReason {
    /// The bound set itself is empty.
    NoBounds,
    /// Bounds exist but none of them is least/greatest.
    NoExtremalBound,
}

impl fmt::Display for NonexistenceReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonexistenceReason::NoBounds => write!(f, "no bounds"),
            NonexistenceReason::NoExtremalBound => write!(f, "no least/greatest bound"),
        }
    }
}

/// Outcome of a join or meet query. Nonexistence is a value, not an error,
/// and carries the scanned bound set for diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtremumResult {
    Exists(ElementId),
    NotExists {
        reason: NonexistenceReason,
        bounds: Vec<ElementId>,
    },
}

impl ExtremumResult {
    /// The witnessing element, when the extremum exists.
    pub fn exists(&self) -> Option<ElementId> {
        match self {
            ExtremumResult::Exists(w) => Some(*w),
            ExtremumResult::NotExists { .. } => None,
        }
    }
}

/// Precomputed `s <= t` relation of one inverse semigroup, with per-element
/// downsets.
///
/// `s <= t` holds iff `s = (s s⁻¹) t`. Queries are pure and the value is
/// immutable, so it can be shared freely between threads.
#[derive(Clone)]
pub struct NaturalOrder {
    size: usize,
    leq: Vec<bool>, // row-major: leq[s*size + t]
    downsets: Vec<Vec<ElementId>>,
    idempotent: Vec<bool>,
    minimum: Option<ElementId>,
}

impl NaturalOrder {
    pub fn new(s: &InverseSemigroup) -> Self {
        let size = s.size();
        let mut leq = vec![false; size * size];
        for a in s.elements() {
            let e = s.mul(a, s.inv(a));
            for b in s.elements() {
                leq[a.index() * size + b.index()] = s.mul(e, b) == a;
            }
        }
        let downsets = (0..size)
            .map(|t| {
                (0..size)
                    .filter(|&x| leq[x * size + t])
                    .map(|x| ElementId(x as u32))
                    .collect()
            })
            .collect();
        let idempotent = (0..size)
            .map(|e| s.is_idempotent(ElementId(e as u32)))
            .collect();
        let minimum = (0..size)
            .find(|&m| (0..size).all(|t| leq[m * size + t]))
            .map(|m| ElementId(m as u32));
        Self {
            size,
            leq,
            downsets,
            idempotent,
            minimum,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, s: ElementId, t: ElementId) -> bool {
        self.leq[s.index() * self.size + t.index()]
    }

    /// `↓t = { s : s <= t }`, in carrier order. When `t` is idempotent every
    /// member is idempotent; that fact is load-bearing for the law checks,
    /// so it is asserted here rather than assumed.
    pub fn downsegment(&self, t: ElementId) -> &[ElementId] {
        let down = &self.downsets[t.index()];
        if self.idempotent[t.index()] {
            assert!(
                down.iter().all(|&g| self.idempotent[g.index()]),
                "downsegment of an idempotent contains a non-idempotent"
            );
        }
        down
    }

    /// All common upper bounds of `xs`. The empty set is bounded by the
    /// whole carrier.
    pub fn upper_bounds(&self, xs: &[ElementId]) -> Vec<ElementId> {
        let mut candidate = vec![true; self.size];
        for &x in xs {
            let row = &self.leq[x.index() * self.size..(x.index() + 1) * self.size];
            for (c, &above) in candidate.iter_mut().zip(row.iter()) {
                *c &= above;
            }
        }
        candidate
            .iter()
            .enumerate()
            .filter(|(_, &keep)| keep)
            .map(|(u, _)| ElementId(u as u32))
            .collect()
    }

    /// All common lower bounds of `xs`.
    pub fn lower_bounds(&self, xs: &[ElementId]) -> Vec<ElementId> {
        (0..self.size)
            .map(|l| ElementId(l as u32))
            .filter(|&l| xs.iter().all(|&x| self.leq(l, x)))
            .collect()
    }

    /// Least upper bound of a subset, by scanning the bound set for a
    /// minimum. The empty join exists exactly when the carrier has a minimum
    /// element, and equals it.
    pub fn join(&self, xs: &[ElementId]) -> ExtremumResult {
        let bounds = self.upper_bounds(xs);
        if bounds.is_empty() {
            return ExtremumResult::NotExists {
                reason: NonexistenceReason::NoBounds,
                bounds,
            };
        }
        for &w in &bounds {
            if bounds.iter().all(|&u| self.leq(w, u)) {
                return ExtremumResult::Exists(w);
            }
        }
        ExtremumResult::NotExists {
            reason: NonexistenceReason::NoExtremalBound,
            bounds,
        }
    }

    /// Greatest lower bound of a pair.
    pub fn meet(&self, x: ElementId, y: ElementId) -> ExtremumResult {
        let bounds = self.lower_bounds(&[x, y]);
        if bounds.is_empty() {
            return ExtremumResult::NotExists {
                reason: NonexistenceReason::NoBounds,
                bounds,
            };
        }
        for &w in &bounds {
            if bounds.iter().all(|&l| self.leq(l, w)) {
                return ExtremumResult::Exists(w);
            }
        }
        ExtremumResult::NotExists {
            reason: NonexistenceReason::NoExtremalBound,
            bounds,
        }
    }

    /// The minimum of the whole carrier, when it exists. In an inverse
    /// semigroup this is the same as a zero element.
    pub fn minimum(&self) -> Option<ElementId> {
        self.minimum
    }

    /// Number of pairs with `s <= t`, reflexive pairs included.
    pub fn comparable_pairs(&self) -> u64 {
        self.leq.iter().filter(|&&b| b).count() as u64
    }
}
