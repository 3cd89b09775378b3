//! Computing with finite inverse semigroups.
//!
//! The crate models a finite inverse semigroup as a carrier with product and
//! inverse tables ([`InverseSemigroup`]), either closed up from concrete
//! partial bijections ([`PartialBijection`]) or validated from a bare Cayley
//! table. On top of that sit the natural partial order with its join/meet
//! engines ([`NaturalOrder`]), a corpus of standard families
//! ([`constructors`]), and brute-force checkers for distributivity-style
//! laws that return replayable counterexample witnesses ([`verify`]).
//! Canonical file formats for semigroups and reports live in [`io`].

pub mod constructors;
pub mod io;
pub mod order;
pub mod pbij;
pub mod semigroup;
pub mod verify;

pub use order::{ExtremumResult, NaturalOrder, NonexistenceReason};
pub use pbij::{PartialBijection, PbijError};
pub use semigroup::{BuildError, ElementId, InverseSemigroup, DEFAULT_CLOSURE_CAP};
pub use verify::{
    check_lemma1, check_lemma2, check_prop17, check_prop20_corpus, check_theorem,
    is_infinitely_distributive, lemma1_f, meet_via_lemma1, replay_witness, BudgetError,
    BudgetMode, Law, LawReport, Replay, Side, SubsetBudget, Verdict, Witness,
    DEFAULT_SUBSET_CEILING,
};
