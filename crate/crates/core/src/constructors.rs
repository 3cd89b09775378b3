//! Standard families of finite inverse semigroups, used as test fixtures and
//! as CLI-generatable objects.
//!
//! Besides the classical families (symmetric inverse monoids, cyclic groups,
//! Brandt semigroups over the trivial group) this module ships named meet
//! tables for the pentagon and diamond lattices and for short chains. Those
//! are the smallest semilattices on which distributivity laws break, so
//! being able to ask for them by name matters more than their size suggests.

use thiserror::Error;

use crate::pbij::PartialBijection;
use crate::semigroup::{BuildError, InverseSemigroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("degree {n} is out of the supported range 0..={max}")]
    DegreeOutOfRange { n: usize, max: usize },
    #[error("parameter n={n} is below the minimum {min} for this family")]
    DegreeTooSmall { n: usize, min: usize },
    #[error("unknown builtin '{name}' (expected n5, m3, trivial, i<k>, c<k>, b<k> or chain<k>)")]
    UnknownBuiltin { name: String },
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Largest degree for which the full symmetric inverse monoid is generated;
/// degree 5 already has 1546 elements.
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

/// All partial bijections on `n` points under composition: the universal
/// finite example. Carrier is in canonical element order.
pub fn symmetric_inverse_monoid(n: usize) -> Result<InverseSemigroup, FamilyError> {
    if n > MAX_SYMMETRIC_DEGREE {
        return Err(FamilyError::DegreeOutOfRange {
            n,
            max: MAX_SYMMETRIC_DEGREE,
        });
    }
    let carrier = PartialBijection::enumerate_all(n);
    Ok(from_bijections(carrier))
}

fn from_bijections(carrier: Vec<PartialBijection>) -> InverseSemigroup {
    use std::collections::HashMap;
    let size = carrier.len();
    let index: HashMap<&PartialBijection, usize> =
        carrier.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut product = vec![0u32; size * size];
    for (a, pa) in carrier.iter().enumerate() {
        for (b, pb) in carrier.iter().enumerate() {
            product[a * size + b] = index[&pa.compose(pb).expect("equal degrees")] as u32;
        }
    }
    let inverse: Vec<u32> = carrier.iter().map(|p| index[&p.invert()] as u32).collect();
    let labels: Vec<String> = carrier.iter().map(|p| p.to_string()).collect();
    InverseSemigroup::from_tables_unchecked(size, product, inverse, Some(labels), Some(carrier))
}

/// A commutative idempotent table interpreted as an inverse semigroup:
/// every element is its own inverse and the product is the meet. The natural
/// order of the result coincides with the table order `x <= y iff x·y = x`.
pub fn semilattice_from_meet_table(
    table: &[Vec<usize>],
    labels: Option<Vec<String>>,
) -> Result<InverseSemigroup, FamilyError> {
    let size = table.len();
    // idempotency and commutativity first, with witnesses; shape, range and
    // associativity are delegated to the table validator
    for (x, row) in table.iter().enumerate() {
        if row.len() == size && row[x] != x {
            return Err(BuildError::NotIdempotent { x }.into());
        }
    }
    for x in 0..size {
        for y in x + 1..size {
            if table[x].len() == size
                && table[y].len() == size
                && table[x][y] != table[y][x]
            {
                return Err(BuildError::NotCommutative { x, y }.into());
            }
        }
    }
    let identity: Vec<usize> = (0..size).collect();
    let s = InverseSemigroup::from_cayley_table(table, Some(&identity), labels)?;
    for x in s.elements() {
        for y in s.elements() {
            assert_eq!(
                s.natural_leq(x, y),
                s.mul(x, y) == x,
                "natural order disagrees with the meet-table order"
            );
        }
    }
    Ok(s)
}

/// The cyclic group of order `n`, written additively; its natural order is
/// an antichain.
pub fn cyclic_group(n: usize) -> Result<InverseSemigroup, FamilyError> {
    if n < 1 {
        return Err(FamilyError::DegreeTooSmall { n, min: 1 });
    }
    let mut product = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            product[i * n + j] = ((i + j) % n) as u32;
        }
    }
    let inverse: Vec<u32> = (0..n).map(|k| ((n - k) % n) as u32).collect();
    let labels = (0..n).map(|k| k.to_string()).collect();
    Ok(InverseSemigroup::from_tables_unchecked(
        n,
        product,
        inverse,
        Some(labels),
        None,
    ))
}

/// The Brandt semigroup over the trivial group: carrier `{(i,j)} ∪ {0}`
/// with `(i,j)(k,l) = (i,l)` when `j = k` and `0` otherwise. The zero sits
/// at the last carrier index.
pub fn brandt(n: usize) -> Result<InverseSemigroup, FamilyError> {
    if n < 2 {
        return Err(FamilyError::DegreeTooSmall { n, min: 2 });
    }
    let size = n * n + 1;
    let zero = (size - 1) as u32;
    let pair = |i: usize, j: usize| (i * n + j) as u32;
    let mut product = vec![zero; size * size];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    product[pair(i, j) as usize * size + pair(k, l) as usize] =
                        if j == k { pair(i, l) } else { zero };
                }
            }
        }
    }
    let mut inverse: Vec<u32> = vec![zero; size];
    for i in 0..n {
        for j in 0..n {
            inverse[pair(i, j) as usize] = pair(j, i);
        }
    }
    let mut labels: Vec<String> = Vec::with_capacity(size);
    for i in 0..n {
        for j in 0..n {
            labels.push(format!("({},{})", i + 1, j + 1));
        }
    }
    labels.push("0".to_string());
    Ok(InverseSemigroup::from_tables_unchecked(
        size,
        product,
        inverse,
        Some(labels),
        None,
    ))
}

/// Adjoins an absorbing zero at the last carrier index; the zero becomes
/// the minimum of the natural order, so every pair gains a lower bound and
/// the empty join starts to exist.
pub fn adjoin_zero(s: &InverseSemigroup) -> InverseSemigroup {
    let old = s.size();
    let size = old + 1;
    let zero = old as u32;
    let mut product = vec![zero; size * size];
    for a in s.elements() {
        for b in s.elements() {
            product[a.index() * size + b.index()] = s.mul(a, b).0;
        }
    }
    let mut inverse: Vec<u32> = s.elements().map(|a| s.inv(a).0).collect();
    inverse.push(zero);
    let mut labels: Vec<String> = s.elements().map(|a| s.label(a)).collect();
    labels.push("z".to_string());
    InverseSemigroup::from_tables_unchecked(size, product, inverse, Some(labels), None)
}

/// The chain `0 < 1 < .. < n-1` as a meet-semilattice.
pub fn chain(n: usize) -> Result<InverseSemigroup, FamilyError> {
    if n < 1 {
        return Err(FamilyError::DegreeTooSmall { n, min: 1 });
    }
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| i.min(j)).collect()).collect();
    let labels = (0..n).map(|k| k.to_string()).collect();
    semilattice_from_meet_table(&table, Some(labels))
}

/// The pentagon lattice as a meet-semilattice: `0 < a < c < 1` and
/// `0 < b < 1`, with `a∧b = b∧c = 0`.
pub fn n5() -> InverseSemigroup {
    let table = vec![
        vec![0, 0, 0, 0, 0],
        vec![0, 1, 0, 1, 1],
        vec![0, 0, 2, 0, 2],
        vec![0, 1, 0, 3, 3],
        vec![0, 1, 2, 3, 4],
    ];
    let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    semilattice_from_meet_table(&table, Some(labels)).expect("pentagon meet table is a semilattice")
}

/// The diamond lattice as a meet-semilattice: three atoms `a, b, c` between
/// `0` and `1`, distinct atoms meeting at `0`.
pub fn m3() -> InverseSemigroup {
    let table = vec![
        vec![0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 1],
        vec![0, 0, 2, 0, 2],
        vec![0, 0, 0, 3, 3],
        vec![0, 1, 2, 3, 4],
    ];
    let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    semilattice_from_meet_table(&table, Some(labels)).expect("diamond meet table is a semilattice")
}

/// Resolves a builtin fixture name: `n5`, `m3`, `trivial`, `i<k>`, `c<k>`,
/// `b<k>` or `chain<k>`.
pub fn builtin(name: &str) -> Result<InverseSemigroup, FamilyError> {
    let unknown = || FamilyError::UnknownBuiltin {
        name: name.to_string(),
    };
    match name {
        "n5" => return Ok(n5()),
        "m3" => return Ok(m3()),
        "trivial" => return cyclic_group(1),
        _ => {}
    }
    if let Some(k) = name.strip_prefix("chain") {
        let k: usize = k.parse().map_err(|_| unknown())?;
        return chain(k);
    }
    if name.len() < 2 || !name.is_char_boundary(1) {
        return Err(unknown());
    }
    let (family, k) = name.split_at(1);
    let k: usize = k.parse().map_err(|_| unknown())?;
    match family {
        "i" => symmetric_inverse_monoid(k),
        "c" => cyclic_group(k),
        "b" => brandt(k),
        _ => Err(unknown()),
    }
}

/// A machine-readable description of one family member, the unit that the
/// CLI's `gen` command accepts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    SymmetricInverse { n: usize },
    CyclicGroup { n: usize },
    Brandt { n: usize },
    Semilattice { table: Vec<Vec<usize>> },
    AdjoinZero { inner: Box<FamilySpec> },
    Builtin { name: String },
}

impl FamilySpec {
    pub fn construct(&self) -> Result<InverseSemigroup, FamilyError> {
        match self {
            FamilySpec::SymmetricInverse { n } => symmetric_inverse_monoid(*n),
            FamilySpec::CyclicGroup { n } => cyclic_group(*n),
            FamilySpec::Brandt { n } => brandt(*n),
            FamilySpec::Semilattice { table } => semilattice_from_meet_table(table, None),
            FamilySpec::AdjoinZero { inner } => Ok(adjoin_zero(&inner.construct()?)),
            FamilySpec::Builtin { name } => builtin(name),
        }
    }
}

/// The fixture corpus that the law checks are exercised against. The
/// one-element semigroup pins the degenerate base case; the pentagon and
/// diamond are the deliberate non-distributive members.
pub fn standard_corpus() -> Vec<(String, InverseSemigroup)> {
    let mut corpus: Vec<(String, InverseSemigroup)> = Vec::new();
    let mut add = |name: &str, s: InverseSemigroup| corpus.push((name.to_string(), s));
    add("trivial", cyclic_group(1).unwrap());
    add("c2", cyclic_group(2).unwrap());
    add("c3", cyclic_group(3).unwrap());
    add("c4", cyclic_group(4).unwrap());
    add("b2", brandt(2).unwrap());
    add("b3", brandt(3).unwrap());
    add("i1", symmetric_inverse_monoid(1).unwrap());
    add("i2", symmetric_inverse_monoid(2).unwrap());
    add("i3", symmetric_inverse_monoid(3).unwrap());
    add("chain2", chain(2).unwrap());
    add("chain3", chain(3).unwrap());
    add("n5", n5());
    add("m3", m3());
    add("c2-with-zero", adjoin_zero(&cyclic_group(2).unwrap()));
    corpus
}

/// Lookup helper for tests and reports.
pub fn corpus_member(name: &str) -> InverseSemigroup {
    standard_corpus()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, s)| s)
        .unwrap_or_else(|| panic!("no corpus member named {name}"))
}
