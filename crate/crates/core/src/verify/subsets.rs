//! Deterministic subset enumeration under a budget.
//!
//! Three phases, always in the same order: an exhaustive bitmask walk when
//! the budget allows it, otherwise all subsets up to a size cap in
//! size-then-lexicographic order, followed by seeded random larger subsets.
//! Sampling is counter-based (one ChaCha stream per sample index), so a
//! partitioned run enumerates exactly what a serial run does.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default ceiling on the number of subsets an exhaustive walk may visit.
pub const DEFAULT_SUBSET_CEILING: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BudgetError {
    #[error(
        "exhaustive enumeration over {size} elements needs 2^{size} subsets, over the ceiling of {ceiling}"
    )]
    ExhaustiveInfeasible { size: usize, ceiling: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetMode {
    Exhaustive,
    Bounded,
}

/// How far a subset-quantified check is allowed to look.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetBudget {
    pub mode: BudgetMode,
    /// Size cap for the systematic part of bounded mode.
    pub max_subset_size: usize,
    /// Number of seeded random subsets larger than the cap (bounded mode).
    pub sample_count: u64,
    pub seed: u64,
    /// Whether the empty subset is enumerated at all.
    pub include_empty_set: bool,
    /// Exhaustive mode is only permitted while 2^|S| stays at or below this.
    pub subset_ceiling: u64,
}

impl Default for SubsetBudget {
    fn default() -> Self {
        Self::bounded(3)
    }
}

impl SubsetBudget {
    pub fn exhaustive() -> Self {
        Self {
            mode: BudgetMode::Exhaustive,
            max_subset_size: 0,
            sample_count: 0,
            seed: 0,
            include_empty_set: true,
            subset_ceiling: DEFAULT_SUBSET_CEILING,
        }
    }

    pub fn bounded(max_subset_size: usize) -> Self {
        Self {
            mode: BudgetMode::Bounded,
            max_subset_size,
            sample_count: 0,
            seed: 0,
            include_empty_set: true,
            subset_ceiling: DEFAULT_SUBSET_CEILING,
        }
    }

    pub fn with_samples(mut self, sample_count: u64, seed: u64) -> Self {
        self.sample_count = sample_count;
        self.seed = seed;
        self
    }

    pub fn with_empty_set(mut self, include: bool) -> Self {
        self.include_empty_set = include;
        self
    }

    pub fn with_ceiling(mut self, ceiling: u64) -> Self {
        self.subset_ceiling = ceiling;
        self
    }

    /// Errors when exhaustive mode is requested over too large a carrier.
    pub fn feasible_for(&self, size: usize) -> Result<(), BudgetError> {
        if self.mode == BudgetMode::Exhaustive {
            let over = size >= 64 || (1u128 << size) > self.subset_ceiling as u128;
            if over {
                return Err(BudgetError::ExhaustiveInfeasible {
                    size,
                    ceiling: self.subset_ceiling,
                });
            }
        }
        Ok(())
    }
}

/// Iterator over subsets of `{0, .., n-1}` as sorted index vectors.
pub struct SubsetIter {
    n: usize,
    budget: SubsetBudget,
    complete: bool,
    phase: Phase,
}

enum Phase {
    Masks { next: u64, end: u64 },
    Combos { current: Option<Vec<usize>>, max_size: usize },
    Samples { next: u64 },
    Done,
}

/// Starts enumerating subsets of an `n`-element index range under a budget.
pub fn subsets(n: usize, budget: &SubsetBudget) -> Result<SubsetIter, BudgetError> {
    budget.feasible_for(n)?;
    let (phase, complete) = match budget.mode {
        BudgetMode::Exhaustive => (
            Phase::Masks {
                next: if budget.include_empty_set { 0 } else { 1 },
                end: 1u64 << n,
            },
            true,
        ),
        BudgetMode::Bounded => (
            Phase::Combos {
                current: None,
                max_size: budget.max_subset_size.min(n),
            },
            // the systematic part alone already covers every subset
            budget.max_subset_size >= n,
        ),
    };
    Ok(SubsetIter {
        n,
        budget: budget.clone(),
        complete,
        phase,
    })
}

impl SubsetIter {
    /// True when this enumeration provably visits every subset, so a clean
    /// pass deserves the verdict "holds" rather than "holds within budget".
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn sample(&self, index: u64) -> Vec<usize> {
        // one stream per sample: parallel partitions agree with serial runs
        let mut rng = ChaCha8Rng::seed_from_u64(self.budget.seed);
        rng.set_stream(index);
        let lo = self.budget.max_subset_size + 1;
        let hi = self.n;
        let size = lo + (rng.next_u64() % (hi - lo + 1) as u64) as usize;
        // Floyd's sampling: uniform size-k subset, emitted sorted
        let mut chosen = std::collections::BTreeSet::new();
        for j in (self.n - size)..self.n {
            let t = (rng.next_u64() % (j as u64 + 1)) as usize;
            if !chosen.insert(t) {
                chosen.insert(j);
            }
        }
        chosen.into_iter().collect()
    }
}

impl Iterator for SubsetIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            match &mut self.phase {
                Phase::Masks { next, end } => {
                    if *next >= *end {
                        self.phase = Phase::Done;
                        continue;
                    }
                    let mask = *next;
                    *next += 1;
                    return Some((0..self.n).filter(|i| mask & (1 << i) != 0).collect());
                }
                Phase::Combos { current, max_size } => {
                    let max_size = *max_size;
                    match current {
                        None => {
                            // start at the empty set or the first singleton
                            if self.budget.include_empty_set {
                                *current = Some(Vec::new());
                                return Some(Vec::new());
                            }
                            if max_size >= 1 && self.n >= 1 {
                                *current = Some(vec![0]);
                                return Some(vec![0]);
                            }
                            self.phase = self.samples_or_done();
                            continue;
                        }
                        Some(combo) => {
                            if let Some(next) = next_combination(combo, self.n) {
                                *combo = next.clone();
                                return Some(next);
                            }
                            let k = combo.len() + 1;
                            if k <= max_size && k <= self.n {
                                let first: Vec<usize> = (0..k).collect();
                                *combo = first.clone();
                                return Some(first);
                            }
                            self.phase = self.samples_or_done();
                            continue;
                        }
                    }
                }
                Phase::Samples { next } => {
                    if *next >= self.budget.sample_count {
                        self.phase = Phase::Done;
                        continue;
                    }
                    let index = *next;
                    *next += 1;
                    return Some(self.sample(index));
                }
                Phase::Done => return None,
            }
        }
    }
}

impl SubsetIter {
    fn samples_or_done(&self) -> Phase {
        // larger-than-cap sizes must exist for sampling to mean anything
        if self.budget.sample_count > 0 && self.budget.max_subset_size < self.n {
            Phase::Samples { next: 0 }
        } else {
            Phase::Done
        }
    }
}

/// Next same-size combination of `{0, .., n-1}` in lexicographic order.
fn next_combination(combo: &[usize], n: usize) -> Option<Vec<usize>> {
    let k = combo.len();
    if k == 0 {
        return None;
    }
    let mut next = combo.to_vec();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if next[i] < n - (k - i) {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            return Some(next);
        }
    }
    None
}
