//! Executable law checks: infinite distributivity, the two meet lemmas, the
//! meet–join distributivity theorem, and the two supporting join
//! propositions, each over a finite inverse semigroup and each producing a
//! replayable counterexample witness when it fails.
//!
//! Verdict semantics: `Holds` means the quantifier domain requested by the
//! budget was covered completely; `HoldsWithinBudget` means no violation was
//! found inside a bounded enumeration and never overclaims; `Fails` comes
//! with a witness; conditional laws report `HypothesisNotEstablished` when
//! the distributivity hypothesis itself fails under the same budget, which
//! is a different thing from the law failing.

mod subsets;

pub use subsets::{
    subsets, BudgetError, BudgetMode, SubsetBudget, SubsetIter, DEFAULT_SUBSET_CEILING,
};

use std::collections::BTreeSet;

use crate::order::{ExtremumResult, NaturalOrder};
use crate::semigroup::{ElementId, InverseSemigroup};

/// The laws this crate can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    Distributivity,
    Lemma1,
    Lemma2,
    Theorem,
    Prop17,
    Prop20Corpus,
}

impl Law {
    pub fn id(self) -> &'static str {
        match self {
            Law::Distributivity => "distributivity",
            Law::Lemma1 => "lemma1",
            Law::Lemma2 => "lemma2",
            Law::Theorem => "theorem",
            Law::Prop17 => "prop17",
            Law::Prop20Corpus => "prop20-corpus",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        match id {
            "distributivity" => Some(Law::Distributivity),
            "lemma1" => Some(Law::Lemma1),
            "lemma2" => Some(Law::Lemma2),
            "theorem" => Some(Law::Theorem),
            "prop17" => Some(Law::Prop17),
            "prop20-corpus" => Some(Law::Prop20Corpus),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    HoldsWithinBudget,
    Fails,
    HypothesisNotEstablished,
}

impl Verdict {
    pub fn id(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::HoldsWithinBudget => "holds-within-budget",
            Verdict::Fails => "fails",
            Verdict::HypothesisNotEstablished => "hypothesis-not-established",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        match id {
            "holds" => Some(Verdict::Holds),
            "holds-within-budget" => Some(Verdict::HoldsWithinBudget),
            "fails" => Some(Verdict::Fails),
            "hypothesis-not-established" => Some(Verdict::HypothesisNotEstablished),
            _ => None,
        }
    }
}

/// One side of a violated identity: an element, or a join/meet that failed
/// to exist (with the diagnostic reason).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Element(ElementId),
    DoesNotExist(String),
}

impl Side {
    fn from_extremum(r: &ExtremumResult) -> Self {
        match r {
            ExtremumResult::Exists(w) => Side::Element(*w),
            ExtremumResult::NotExists { reason, .. } => Side::DoesNotExist(reason.to_string()),
        }
    }
}

/// A concrete counterexample: which identity broke (`context`), the elements
/// and subset involved, and the two sides that differ. Everything needed to
/// re-evaluate the violation through the order engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub context: String,
    /// Index into the corpus, for corpus-level checks.
    pub corpus_index: Option<usize>,
    /// The multiplier `s` of a distributivity violation.
    pub multiplier: Option<ElementId>,
    pub x: Option<ElementId>,
    pub y: Option<ElementId>,
    /// The subset X, or the family (y_i). Families are kept as subsets:
    /// repeated members change neither joins nor meets.
    pub family: Option<Vec<ElementId>>,
    pub left: Side,
    pub right: Side,
}

impl Witness {
    fn new(context: impl Into<String>, left: Side, right: Side) -> Self {
        Self {
            context: context.into(),
            corpus_index: None,
            multiplier: None,
            x: None,
            y: None,
            family: None,
            left,
            right,
        }
    }

    fn multiplier(mut self, s: ElementId) -> Self {
        self.multiplier = Some(s);
        self
    }

    fn x(mut self, x: ElementId) -> Self {
        self.x = Some(x);
        self
    }

    fn y(mut self, y: ElementId) -> Self {
        self.y = Some(y);
        self
    }

    fn family(mut self, family: Vec<ElementId>) -> Self {
        self.family = Some(family);
        self
    }

    fn corpus(mut self, index: usize) -> Self {
        self.corpus_index = Some(index);
        self
    }
}

/// Outcome of one law check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: Law,
    pub verdict: Verdict,
    /// Distributivity only: verdict of the mirrored (right-multiplication)
    /// law, reported separately and never merged into `verdict`.
    pub right_verdict: Option<Verdict>,
    pub witness: Option<Witness>,
    pub right_witness: Option<Witness>,
    /// Cases enumerated, counting vacuous ones; stops counting at the first
    /// failure of each side.
    pub cases_checked: u64,
    pub budget: Option<SubsetBudget>,
}

impl LawReport {
    /// True when either side of the law failed outright.
    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fails || self.right_verdict == Some(Verdict::Fails)
    }
}

struct PassOutcome {
    verdict: Verdict,
    witness: Option<Witness>,
    cases: u64,
}

/// One side of the distributivity check over a sub-collection of the
/// carrier: for every enumerated subset X of `universe` with an existing
/// join w and every multiplier s in `universe`, the translated subset must
/// have a join equal to s·w (or w·s for the mirrored law). Joins are always
/// taken in the full semigroup's order.
fn distributivity_pass(
    s: &InverseSemigroup,
    ord: &NaturalOrder,
    universe: &[ElementId],
    budget: &SubsetBudget,
    left_sided: bool,
) -> Result<PassOutcome, BudgetError> {
    let iter = subsets(universe.len(), budget)?;
    let complete = iter.is_complete();
    let mut cases = 0u64;
    for subset in iter {
        let xs: Vec<ElementId> = subset.iter().map(|&i| universe[i]).collect();
        let w = match ord.join(&xs).exists() {
            Some(w) => w,
            None => {
                // no join, nothing to preserve: every multiplier is vacuous
                cases += universe.len() as u64;
                continue;
            }
        };
        for &m in universe {
            cases += 1;
            let lhs = if left_sided { s.mul(m, w) } else { s.mul(w, m) };
            let translated: Vec<ElementId> = xs
                .iter()
                .map(|&x| if left_sided { s.mul(m, x) } else { s.mul(x, m) })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let rhs = ord.join(&translated);
            if rhs.exists() != Some(lhs) {
                let mut context = if left_sided {
                    "left-distributivity".to_string()
                } else {
                    "right-distributivity".to_string()
                };
                if xs.is_empty() {
                    // the empty-set convention is not universally agreed on,
                    // so such cases are flagged distinctly
                    context.push_str("-empty-set");
                }
                let witness = Witness::new(context, Side::Element(lhs), Side::from_extremum(&rhs))
                    .multiplier(m)
                    .family(xs);
                return Ok(PassOutcome {
                    verdict: Verdict::Fails,
                    witness: Some(witness),
                    cases,
                });
            }
        }
    }
    Ok(PassOutcome {
        verdict: if complete {
            Verdict::Holds
        } else {
            Verdict::HoldsWithinBudget
        },
        witness: None,
        cases,
    })
}

/// Checks that multiplication distributes over every enumerated existing
/// join: whenever ⋁X exists, ⋁(sX) exists and equals s·⋁X. The mirrored
/// right-multiplication law is checked too and reported in its own fields.
pub fn is_infinitely_distributive(
    s: &InverseSemigroup,
    ord: &NaturalOrder,
    budget: &SubsetBudget,
) -> Result<LawReport, BudgetError> {
    let all: Vec<ElementId> = s.elements().collect();
    let left = distributivity_pass(s, ord, &all, budget, true)?;
    let right = distributivity_pass(s, ord, &all, budget, false)?;
    Ok(LawReport {
        law: Law::Distributivity,
        verdict: left.verdict,
        right_verdict: Some(right.verdict),
        witness: left.witness,
        right_witness: right.witness,
        cases_checked: left.cases + right.cases,
        budget: Some(budget.clone()),
    })
}

/// The candidate idempotent join of the meet construction: computes
/// `G = { g ∈ ↓(x x⁻¹ y y⁻¹) : g·x = g·y }` and returns ⋁G. Every member of
/// G is asserted to be idempotent (it sits below an idempotent).
pub fn lemma1_f(
    s: &InverseSemigroup,
    ord: &NaturalOrder,
    x: ElementId,
    y: ElementId,
) -> ExtremumResult {
    let dom = s.mul(s.mul(x, s.inv(x)), s.mul(y, s.inv(y)));
    let g: Vec<ElementId> = ord
        .downsegment(dom)
        .iter()
        .copied()
        .filter(|&g| s.mul(g, x) == s.mul(g, y))
        .collect();
    for &gi in &g {
        assert!(
            s.is_idempotent(gi),
            "candidate below an idempotent is not idempotent"
        );
    }
    ord.join(&g)
}

/// The meet of `x` and `y` computed through the idempotent join route: when
/// ⋁G = f exists this returns f·x (asserting f·x = f·y), otherwise the
/// nonexistence is passed through.
///
/// On an infinitely distributive semigroup this agrees with [`NaturalOrder::meet`]
/// in both directions of existence; on an arbitrary one, agreement is only
/// guaranteed when the meet exists.
pub fn meet_via_lemma1(
    s: &InverseSemigroup,
    ord: &NaturalOrder,
    x: ElementId,
    y: ElementId,
) -> ExtremumResult {
    match lemma1_f(s, ord, x, y) {
        ExtremumResult::Exists(f) => {
            let fx = s.mul(f, x);
            assert_eq!(
                fx,
                s.mul(f, y),
                "f·x and f·y differ; the hypothesis of the meet construction is violated"
            );
            ExtremumResult::Exists(fx)
        }
        missing => missing,
    }
}

/// For every pair whose meet exists: the join f of the idempotent candidate
/// set exists, f·x = f·y = x∧y, and f = (x∧y)(x∧y)⁻¹. This holds in every
/// inverse semigroup, with no distributivity hypothesis, so the check runs
/// over the full pair grid unconditionally.
pub fn check_lemma1(s: &InverseSemigroup, ord: &NaturalOrder) -> LawReport {
    let mut cases = 0u64;
    let mut fail: Option<Witness> = None;
    'outer: for x in s.elements() {
        for y in s.elements() {
            cases += 1;
            let m = match ord.meet(x, y).exists() {
                Some(m) => m,
                None => continue,
            };
            let f = match lemma1_f(s, ord, x, y) {
                ExtremumResult::Exists(f) => f,
                missing => {
                    fail = Some(
                        Witness::new(
                            "lemma1-f-missing",
                            Side::from_extremum(&missing),
                            Side::Element(m),
                        )
                        .x(x)
                        .y(y),
                    );
                    break 'outer;
                }
            };
            let fx = s.mul(f, x);
            if fx != m {
                fail = Some(
                    Witness::new("lemma1-fx-ne-meet", Side::Element(fx), Side::Element(m))
                        .x(x)
                        .y(y),
                );
                break 'outer;
            }
            let fy = s.mul(f, y);
            if fy != m {
                fail = Some(
                    Witness::new("lemma1-fy-ne-meet", Side::Element(fy), Side::Element(m))
                        .x(x)
                        .y(y),
                );
                break 'outer;
            }
            let mm = s.mul(m, s.inv(m));
            if f != mm {
                fail = Some(
                    Witness::new("lemma1-f-ne-mm-inv", Side::Element(f), Side::Element(mm))
                        .x(x)
                        .y(y),
                );
                break 'outer;
            }
        }
    }
    LawReport {
        law: Law::Lemma1,
        verdict: if fail.is_some() {
            Verdict::Fails
        } else {
            Verdict::Holds
        },
        right_verdict: None,
        witness: fail,
        right_witness: None,
        cases_checked: cases,
        budget: None,
    }
}

fn hypothesis_not_established(law: Law, gate: LawReport, budget: &SubsetBudget) -> LawReport {
    let witness = gate.witness.or(gate.right_witness).map(|mut w| {
        w.context = format!("hypothesis:{}", w.context);
        w
    });
    LawReport {
        law,
        verdict: Verdict::HypothesisNotEstablished,
        right_verdict: None,
        witness,
        right_witness: None,
        cases_checked: 0,
        budget: Some(budget.clone()),
    }
}

/// Converse direction, which needs the distributivity hypothesis: for every
/// pair where the candidate join f exists, the meet x∧y exists and equals
/// f·x = f·y. The hypothesis is first established under the same budget;
/// when it fails, the report says so instead of blaming the law.
pub fn check_lemma2(
    s: &InverseSemigroup,
    ord: &NaturalOrder,
    budget: &SubsetBudget,
) -> Result<LawReport, BudgetError> {
    let gate = is_infinitely_distributive(s, ord, budget)?;
    if gate.verdict == Verdict::Fails {
        return Ok(hypothesis_not_established(Law::Lemma2, gate, budget));
    }
    let base = gate.verdict;
    let mut cases = 0u64;
    let mut fail: Option<Witness> = None;
    'outer: for x in s.elements() {
        for y in s.elements() {
            cases += 1;
            let f = match lemma1_f(s, ord, x, y).exists() {
                Some(f) => f,
                None => continue,
            };
            let fx = s.mul(f, x);
            let fy = s.mul(f, y);
            if fx != fy {
                fail = Some(
                    Witness::new("lemma2-fx-ne-fy", Side::Element(fx), Side::Element(fy))
                        .x(x)
                        .y(y),
                );
                break 'outer;
            }
            match ord.meet(x, y) {
                ExtremumResult::Exists(m) if m == fx => {}
                ExtremumResult::Exists(m) => {
                    fail = Some(
                        Witness::new("lemma2-meet-ne-fx", Side::Element(m), Side::Element(fx))
                            .x(x)
                            .y(y),
                    );
                    break 'outer;
                }
                missing => {
                    fail = Some(
                        Witness::new(
                            "lemma2-meet-missing",
                            Side::from_extremum(&missing),
                            Side::Element(fx),
                        )
                        .x(x)
                        .y(y),
                    );
                    break 'outer;
                }
            }
        }
    }
    Ok(LawReport {
        law: Law::Lemma2,
        verdict: if fail.is_some() { Verdict::Fails } else { base },
        right_verdict: None,
        witness: fail,
        right_witness: None,
        cases_checked: cases,
        budget: Some(budget.clone()),
    })
}

/// The meet–join distributivity identity with its proof obligations: for
/// every enumerated family Y with ⋁Y existing and every x whose meet with ⋁Y
/// exists, each x∧y_i exists, ⋁(x∧y_i) exists and equals x∧⋁Y; and along the
/// way the intermediate identities hold: lemma1_f(x, y_i) = e_i·f with
/// e_i = y_i y_i⁻¹ and f = lemma1_f(x, ⋁Y), e_i·f·x = x∧y_i, and
/// ⋁e_i = (⋁Y)(⋁Y)⁻¹.
pub fn check_theorem(
    s: &InverseSemigroup,
    ord: &NaturalOrder,
    budget: &SubsetBudget,
) -> Result<LawReport, BudgetError> {
    let gate = is_infinitely_distributive(s, ord, budget)?;
    if gate.verdict == Verdict::Fails {
        return Ok(hypothesis_not_established(Law::Theorem, gate, budget));
    }
    let base = gate.verdict;
    let all: Vec<ElementId> = s.elements().collect();
    let iter = subsets(s.size(), budget)?;
    let complete = iter.is_complete();
    let mut cases = 0u64;
    let mut fail: Option<Witness> = None;
    'outer: for subset in iter {
        let family: Vec<ElementId> = subset.iter().map(|&i| all[i]).collect();
        let yv = match ord.join(&family).exists() {
            Some(v) => v,
            None => {
                cases += all.len() as u64;
                continue;
            }
        };
        // ⋁ e_i = (⋁Y)(⋁Y)⁻¹, independent of x, checked once per family
        let e_set: Vec<ElementId> = family
            .iter()
            .map(|&yi| s.mul(yi, s.inv(yi)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let yy = s.mul(yv, s.inv(yv));
        let e_join = ord.join(&e_set);
        if e_join.exists() != Some(yy) {
            fail = Some(
                Witness::new(
                    "theorem-join-ei",
                    Side::Element(yy),
                    Side::from_extremum(&e_join),
                )
                .family(family),
            );
            break 'outer;
        }
        for &x in &all {
            cases += 1;
            let m = match ord.meet(x, yv).exists() {
                Some(m) => m,
                None => continue,
            };
            let f = match lemma1_f(s, ord, x, yv) {
                ExtremumResult::Exists(f) => f,
                missing => {
                    fail = Some(
                        Witness::new(
                            "theorem-f-missing",
                            Side::from_extremum(&missing),
                            Side::Element(m),
                        )
                        .x(x)
                        .family(family),
                    );
                    break 'outer;
                }
            };
            let mut meets: Vec<ElementId> = Vec::with_capacity(family.len());
            for &yi in &family {
                let mi = match ord.meet(x, yi) {
                    ExtremumResult::Exists(mi) => mi,
                    missing => {
                        fail = Some(
                            Witness::new(
                                "theorem-component-meet-missing",
                                Side::from_extremum(&missing),
                                Side::Element(m),
                            )
                            .x(x)
                            .y(yi)
                            .family(family),
                        );
                        break 'outer;
                    }
                };
                meets.push(mi);
                let ei = s.mul(yi, s.inv(yi));
                let eif = s.mul(ei, f);
                let fi = lemma1_f(s, ord, x, yi);
                if fi.exists() != Some(eif) {
                    fail = Some(
                        Witness::new(
                            "theorem-fi",
                            Side::from_extremum(&fi),
                            Side::Element(eif),
                        )
                        .x(x)
                        .y(yi)
                        .family(family),
                    );
                    break 'outer;
                }
                let eifx = s.mul(eif, x);
                if eifx != mi {
                    fail = Some(
                        Witness::new("theorem-ei-fx", Side::Element(eifx), Side::Element(mi))
                            .x(x)
                            .y(yi)
                            .family(family),
                    );
                    break 'outer;
                }
            }
            let meets: Vec<ElementId> = meets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
            let join_meets = ord.join(&meets);
            if join_meets.exists() != Some(m) {
                fail = Some(
                    Witness::new(
                        "theorem-join-of-meets",
                        Side::Element(m),
                        Side::from_extremum(&join_meets),
                    )
                    .x(x)
                    .family(family),
                );
                break 'outer;
            }
        }
    }
    let verdict = if fail.is_some() {
        Verdict::Fails
    } else if base == Verdict::Holds && complete {
        Verdict::Holds
    } else {
        Verdict::HoldsWithinBudget
    };
    Ok(LawReport {
        law: Law::Theorem,
        verdict,
        right_verdict: None,
        witness: fail,
        right_witness: None,
        cases_checked: cases,
        budget: Some(budget.clone()),
    })
}

/// Joins are preserved by the range map: whenever ⋁X exists,
/// ⋁{x x⁻¹ : x ∈ X} exists and equals (⋁X)(⋁X)⁻¹. Holds in any inverse
/// semigroup, so there is no hypothesis gate. Empty-set instances depend on
/// a convention and are flagged distinctly in their witness context.
pub fn check_prop17(
    s: &InverseSemigroup,
    ord: &NaturalOrder,
    budget: &SubsetBudget,
) -> Result<LawReport, BudgetError> {
    let all: Vec<ElementId> = s.elements().collect();
    let iter = subsets(s.size(), budget)?;
    let complete = iter.is_complete();
    let mut cases = 0u64;
    let mut fail: Option<Witness> = None;
    for subset in iter {
        cases += 1;
        let xs: Vec<ElementId> = subset.iter().map(|&i| all[i]).collect();
        let w = match ord.join(&xs).exists() {
            Some(w) => w,
            None => continue,
        };
        let restrictions: Vec<ElementId> = xs
            .iter()
            .map(|&x| s.mul(x, s.inv(x)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let ww = s.mul(w, s.inv(w));
        let join_r = ord.join(&restrictions);
        if join_r.exists() != Some(ww) {
            let context = if xs.is_empty() {
                "prop17-join-of-restrictions-empty-set"
            } else {
                "prop17-join-of-restrictions"
            };
            fail = Some(
                Witness::new(context, Side::Element(ww), Side::from_extremum(&join_r))
                    .family(xs),
            );
            break;
        }
    }
    let verdict = match &fail {
        Some(_) => Verdict::Fails,
        None if complete => Verdict::Holds,
        None => Verdict::HoldsWithinBudget,
    };
    Ok(LawReport {
        law: Law::Prop17,
        verdict,
        right_verdict: None,
        witness: fail,
        right_witness: None,
        cases_checked: cases,
        budget: Some(budget.clone()),
    })
}

/// Corpus-level implication: no member may have a distributive idempotent
/// semilattice E(S) while S itself fails distributivity. The E(S) check
/// restricts subsets and multipliers to idempotents but takes joins in S.
///
/// A member counts as settled when either its S-level law holds over a
/// complete enumeration, or its E(S)-level law fails outright (the
/// implication is then vacuously true for that member).
pub fn check_prop20_corpus(
    corpus: &[InverseSemigroup],
    budget: &SubsetBudget,
) -> Result<LawReport, BudgetError> {
    let mut cases = 0u64;
    let mut all_settled = true;
    let mut fail: Option<Witness> = None;
    for (index, s) in corpus.iter().enumerate() {
        let ord = NaturalOrder::new(s);
        let idempotents = s.idempotents();
        let e_pass = distributivity_pass(s, &ord, &idempotents, budget, true)?;
        cases += e_pass.cases;
        let all: Vec<ElementId> = s.elements().collect();
        let s_pass = distributivity_pass(s, &ord, &all, budget, true)?;
        cases += s_pass.cases;
        if e_pass.verdict != Verdict::Fails && s_pass.verdict == Verdict::Fails {
            fail = s_pass.witness.map(|w| w.corpus(index));
            break;
        }
        let settled = s_pass.verdict == Verdict::Holds || e_pass.verdict == Verdict::Fails;
        all_settled &= settled;
    }
    let verdict = match &fail {
        Some(_) => Verdict::Fails,
        None if all_settled => Verdict::Holds,
        None => Verdict::HoldsWithinBudget,
    };
    Ok(LawReport {
        law: Law::Prop20Corpus,
        verdict,
        right_verdict: None,
        witness: fail,
        right_witness: None,
        cases_checked: cases,
        budget: Some(budget.clone()),
    })
}

/// Result of replaying a witness against a semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Replay {
    /// The witness re-evaluates to a genuine violation.
    Confirmed,
    /// The witness does not describe a violation of this structure.
    NotAViolation(String),
}

fn no(msg: &str) -> Replay {
    Replay::NotAViolation(msg.to_string())
}

/// Compares a recorded side against a freshly computed one. Nonexistence
/// reasons are diagnostic and not part of the comparison.
fn side_matches(recorded: &Side, computed: &Side) -> bool {
    match (recorded, computed) {
        (Side::Element(a), Side::Element(b)) => a == b,
        (Side::DoesNotExist(_), Side::DoesNotExist(_)) => true,
        _ => false,
    }
}

fn sides_conflict(left: &Side, right: &Side) -> bool {
    match (left, right) {
        (Side::Element(a), Side::Element(b)) => a != b,
        _ => true,
    }
}

fn confirm(witness: &Witness, left: Side, right: Side) -> Replay {
    if !side_matches(&witness.left, &left) {
        return no("left side does not re-evaluate to the recorded value");
    }
    if !side_matches(&witness.right, &right) {
        return no("right side does not re-evaluate to the recorded value");
    }
    if !sides_conflict(&left, &right) {
        return no("both sides re-evaluate equal; no violation");
    }
    Replay::Confirmed
}

/// Re-evaluates a failing witness through the order-engine primitives. For
/// corpus witnesses, pass the member named by `corpus_index`.
pub fn replay_witness(s: &InverseSemigroup, ord: &NaturalOrder, witness: &Witness) -> Replay {
    let context = witness
        .context
        .strip_prefix("hypothesis:")
        .unwrap_or(&witness.context);

    let family = witness.family.as_deref();
    let pair = (witness.x, witness.y);

    match context {
        c if c.starts_with("left-distributivity") || c.starts_with("right-distributivity") => {
            let left_sided = c.starts_with("left");
            let (Some(m), Some(xs)) = (witness.multiplier, family) else {
                return no("distributivity witness lacks a multiplier or family");
            };
            let Some(w) = ord.join(xs).exists() else {
                return no("the family has no join; the law does not bind");
            };
            let lhs = if left_sided { s.mul(m, w) } else { s.mul(w, m) };
            let translated: Vec<ElementId> = xs
                .iter()
                .map(|&x| if left_sided { s.mul(m, x) } else { s.mul(x, m) })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            confirm(
                witness,
                Side::Element(lhs),
                Side::from_extremum(&ord.join(&translated)),
            )
        }
        "lemma1-f-missing" | "lemma1-fx-ne-meet" | "lemma1-fy-ne-meet" | "lemma1-f-ne-mm-inv" => {
            let (Some(x), Some(y)) = pair else {
                return no("pair witness lacks x or y");
            };
            let Some(m) = ord.meet(x, y).exists() else {
                return no("the meet does not exist; the law does not bind");
            };
            let f_result = lemma1_f(s, ord, x, y);
            match context {
                "lemma1-f-missing" => {
                    confirm(witness, Side::from_extremum(&f_result), Side::Element(m))
                }
                _ => {
                    let Some(f) = f_result.exists() else {
                        return no("the candidate join does not exist on replay");
                    };
                    match context {
                        "lemma1-fx-ne-meet" => {
                            confirm(witness, Side::Element(s.mul(f, x)), Side::Element(m))
                        }
                        "lemma1-fy-ne-meet" => {
                            confirm(witness, Side::Element(s.mul(f, y)), Side::Element(m))
                        }
                        _ => confirm(
                            witness,
                            Side::Element(f),
                            Side::Element(s.mul(m, s.inv(m))),
                        ),
                    }
                }
            }
        }
        "lemma2-fx-ne-fy" | "lemma2-meet-ne-fx" | "lemma2-meet-missing" => {
            let (Some(x), Some(y)) = pair else {
                return no("pair witness lacks x or y");
            };
            let Some(f) = lemma1_f(s, ord, x, y).exists() else {
                return no("the candidate join does not exist; the law does not bind");
            };
            let fx = s.mul(f, x);
            match context {
                "lemma2-fx-ne-fy" => {
                    confirm(witness, Side::Element(fx), Side::Element(s.mul(f, y)))
                }
                _ => confirm(
                    witness,
                    Side::from_extremum(&ord.meet(x, y)),
                    Side::Element(fx),
                ),
            }
        }
        "theorem-join-ei" => {
            let Some(ys) = family else {
                return no("family witness lacks the family");
            };
            let Some(yv) = ord.join(ys).exists() else {
                return no("the family has no join; the law does not bind");
            };
            let e_set: Vec<ElementId> = ys
                .iter()
                .map(|&yi| s.mul(yi, s.inv(yi)))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            confirm(
                witness,
                Side::Element(s.mul(yv, s.inv(yv))),
                Side::from_extremum(&ord.join(&e_set)),
            )
        }
        "theorem-f-missing" | "theorem-component-meet-missing" | "theorem-fi" | "theorem-ei-fx"
        | "theorem-join-of-meets" => {
            let (Some(x), Some(ys)) = (witness.x, family) else {
                return no("theorem witness lacks x or the family");
            };
            let Some(yv) = ord.join(ys).exists() else {
                return no("the family has no join; the law does not bind");
            };
            let Some(m) = ord.meet(x, yv).exists() else {
                return no("x has no meet with the family join; the law does not bind");
            };
            match context {
                "theorem-f-missing" => confirm(
                    witness,
                    Side::from_extremum(&lemma1_f(s, ord, x, yv)),
                    Side::Element(m),
                ),
                "theorem-component-meet-missing" => {
                    let Some(yi) = witness.y else {
                        return no("component witness lacks y");
                    };
                    confirm(
                        witness,
                        Side::from_extremum(&ord.meet(x, yi)),
                        Side::Element(m),
                    )
                }
                "theorem-fi" | "theorem-ei-fx" => {
                    let Some(yi) = witness.y else {
                        return no("component witness lacks y");
                    };
                    let Some(f) = lemma1_f(s, ord, x, yv).exists() else {
                        return no("the candidate join for the family join is missing on replay");
                    };
                    let eif = s.mul(s.mul(yi, s.inv(yi)), f);
                    if context == "theorem-fi" {
                        confirm(
                            witness,
                            Side::from_extremum(&lemma1_f(s, ord, x, yi)),
                            Side::Element(eif),
                        )
                    } else {
                        let Some(mi) = ord.meet(x, yi).exists() else {
                            return no("the component meet is missing on replay");
                        };
                        confirm(witness, Side::Element(s.mul(eif, x)), Side::Element(mi))
                    }
                }
                _ => {
                    let mut meets = Vec::with_capacity(ys.len());
                    for &yi in ys {
                        match ord.meet(x, yi).exists() {
                            Some(mi) => meets.push(mi),
                            None => return no("a component meet is missing on replay"),
                        }
                    }
                    let meets: Vec<ElementId> =
                        meets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
                    confirm(
                        witness,
                        Side::Element(m),
                        Side::from_extremum(&ord.join(&meets)),
                    )
                }
            }
        }
        c if c.starts_with("prop17-join-of-restrictions") => {
            let Some(xs) = family else {
                return no("family witness lacks the family");
            };
            let Some(w) = ord.join(xs).exists() else {
                return no("the family has no join; the law does not bind");
            };
            let restrictions: Vec<ElementId> = xs
                .iter()
                .map(|&x| s.mul(x, s.inv(x)))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            confirm(
                witness,
                Side::Element(s.mul(w, s.inv(w))),
                Side::from_extremum(&ord.join(&restrictions)),
            )
        }
        other => no(&format!("unknown witness context '{other}'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{
        brandt, chain, corpus_member, cyclic_group, m3, n5, symmetric_inverse_monoid,
    };

    fn with_order(s: InverseSemigroup) -> (InverseSemigroup, NaturalOrder) {
        let ord = NaturalOrder::new(&s);
        (s, ord)
    }

    /// Canonical-order I₂ ids: 0=[-,-] 1=[-,0] 2=[-,1] 3=[0,-] 4=[0,1] 5=[1,-] 6=[1,0]
    fn i2() -> (InverseSemigroup, NaturalOrder) {
        with_order(symmetric_inverse_monoid(2).unwrap())
    }

    const I2_ZERO: ElementId = ElementId(0);
    const I2_ID0: ElementId = ElementId(3);
    const I2_ID1: ElementId = ElementId(2);
    const I2_ID: ElementId = ElementId(4);
    const I2_SWAP: ElementId = ElementId(6);

    #[test]
    fn i2_ids_are_what_the_tests_assume() {
        let (s, _) = i2();
        let carrier = s.bijections().unwrap();
        assert_eq!(carrier[I2_ZERO.index()].to_string(), "[-,-]");
        assert_eq!(carrier[I2_ID0.index()].to_string(), "[0,-]");
        assert_eq!(carrier[I2_ID1.index()].to_string(), "[-,1]");
        assert_eq!(carrier[I2_ID.index()].to_string(), "[0,1]");
        assert_eq!(carrier[I2_SWAP.index()].to_string(), "[1,0]");
    }

    #[test]
    fn lemma1_f_of_an_idempotent_with_itself_is_the_idempotent() {
        let (s, ord) = i2();
        for e in s.idempotents() {
            assert_eq!(lemma1_f(&s, &ord, e, e), ExtremumResult::Exists(e));
        }
    }

    #[test]
    fn lemma1_f_of_identity_and_swap_is_zero() {
        let (s, ord) = i2();
        assert_eq!(
            lemma1_f(&s, &ord, I2_ID, I2_SWAP),
            ExtremumResult::Exists(I2_ZERO)
        );
    }

    #[test]
    fn lemma1_f_of_identity_and_restriction() {
        let (s, ord) = i2();
        assert_eq!(
            lemma1_f(&s, &ord, I2_ID, I2_ID0),
            ExtremumResult::Exists(I2_ID0)
        );
    }

    #[test]
    fn meet_via_lemma1_agrees_with_the_scan_on_examples() {
        let (s, ord) = i2();
        assert_eq!(
            meet_via_lemma1(&s, &ord, I2_ID, I2_SWAP),
            ExtremumResult::Exists(I2_ZERO)
        );
        assert_eq!(ord.meet(I2_ID, I2_SWAP), ExtremumResult::Exists(I2_ZERO));
        for x in s.elements() {
            assert_eq!(meet_via_lemma1(&s, &ord, x, x), ExtremumResult::Exists(x));
        }
    }

    #[test]
    fn meet_via_lemma1_matches_the_pentagon_meet_table() {
        // the pentagon has every meet, and the lemma route needs no
        // distributivity to find them
        let (s, ord) = with_order(n5());
        for x in s.elements() {
            for y in s.elements() {
                let via_lemma = meet_via_lemma1(&s, &ord, x, y).exists();
                assert_eq!(via_lemma, Some(s.mul(x, y)), "pair ({x},{y})");
            }
        }
    }

    #[test]
    fn groups_are_infinitely_distributive() {
        let (s, ord) = with_order(cyclic_group(3).unwrap());
        let report = is_infinitely_distributive(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert_eq!(report.right_verdict, Some(Verdict::Holds));
    }

    #[test]
    fn i2_is_infinitely_distributive_with_the_documented_case_count() {
        let (s, ord) = i2();
        let report = is_infinitely_distributive(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert_eq!(report.cases_checked, 128 * 7 * 2);
    }

    #[test]
    fn pentagon_distributivity_fails_with_the_known_witness() {
        let (s, ord) = with_order(n5());
        let report = is_infinitely_distributive(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        assert_eq!(report.right_verdict, Some(Verdict::Fails));
        let w = report.witness.unwrap();
        // s = c, X = {a, b}, c∧(a∨b) = c but (c∧a)∨(c∧b) = a
        assert_eq!(w.context, "left-distributivity");
        assert_eq!(w.multiplier, Some(ElementId(3)));
        assert_eq!(w.family, Some(vec![ElementId(1), ElementId(2)]));
        assert_eq!(w.left, Side::Element(ElementId(3)));
        assert_eq!(w.right, Side::Element(ElementId(1)));
    }

    #[test]
    fn diamond_distributivity_fails_with_the_analogous_witness() {
        let (s, ord) = with_order(m3());
        let report = is_infinitely_distributive(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        let w = report.witness.unwrap();
        assert_eq!(w.multiplier, Some(ElementId(3)));
        assert_eq!(w.family, Some(vec![ElementId(1), ElementId(2)]));
        assert_eq!(w.left, Side::Element(ElementId(3)));
        assert_eq!(w.right, Side::Element(ElementId(0)));
    }

    #[test]
    fn check_lemma1_holds_even_without_distributivity() {
        for name in ["c3", "i2", "b2", "n5", "m3"] {
            let (s, ord) = with_order(corpus_member(name));
            let report = check_lemma1(&s, &ord);
            assert_eq!(report.verdict, Verdict::Holds, "member {name}");
            assert_eq!(report.cases_checked, (s.size() * s.size()) as u64);
        }
    }

    #[test]
    fn check_lemma2_on_i2_covers_all_pairs() {
        let (s, ord) = i2();
        let report = check_lemma2(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert_eq!(report.cases_checked, 49);
    }

    #[test]
    fn check_lemma2_on_groups_and_distributive_semilattices() {
        for s in [cyclic_group(4).unwrap(), chain(3).unwrap()] {
            let ord = NaturalOrder::new(&s);
            let report = check_lemma2(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
            assert_eq!(report.verdict, Verdict::Holds);
        }
    }

    #[test]
    fn check_lemma2_reports_an_unestablished_hypothesis_on_the_pentagon() {
        let (s, ord) = with_order(n5());
        let report = check_lemma2(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
        assert_eq!(report.verdict, Verdict::HypothesisNotEstablished);
        assert_eq!(report.cases_checked, 0);
        let w = report.witness.unwrap();
        assert!(w.context.starts_with("hypothesis:"));
        // the hypothesis witness replays as a genuine distributivity violation
        assert_eq!(replay_witness(&s, &ord, &w), Replay::Confirmed);
    }

    #[test]
    fn check_theorem_on_i2_exhaustively() {
        let (s, ord) = i2();
        let report = check_theorem(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert_eq!(report.cases_checked, 128 * 7);
    }

    #[test]
    fn theorem_worked_examples_in_i2() {
        let (_s, ord) = i2();
        // x = id, Y = {id|{0}, id|{1}}: both sides are the identity
        let yv = ord.join(&[I2_ID0, I2_ID1]).exists().unwrap();
        assert_eq!(yv, I2_ID);
        assert_eq!(ord.meet(I2_ID, yv).exists(), Some(I2_ID));
        let meets: Vec<ElementId> = [I2_ID0, I2_ID1]
            .iter()
            .map(|&yi| ord.meet(I2_ID, yi).exists().unwrap())
            .collect();
        assert_eq!(ord.join(&meets).exists(), Some(I2_ID));
        // x = swap: swap∧id = 0 and both component meets are 0
        assert_eq!(ord.meet(I2_SWAP, yv).exists(), Some(I2_ZERO));
        for yi in [I2_ID0, I2_ID1] {
            assert_eq!(ord.meet(I2_SWAP, yi).exists(), Some(I2_ZERO));
        }
    }

    #[test]
    fn check_prop17_exhaustively_on_small_members() {
        for name in ["i2", "b2", "c3", "n5"] {
            let (s, ord) = with_order(corpus_member(name));
            let report = check_prop17(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
            assert_eq!(report.verdict, Verdict::Holds, "member {name}");
            assert_eq!(report.cases_checked, 1 << s.size());
        }
    }

    #[test]
    fn check_prop20_on_a_small_corpus() {
        let corpus = vec![
            cyclic_group(3).unwrap(),
            symmetric_inverse_monoid(2).unwrap(),
            brandt(2).unwrap(),
        ];
        let report = check_prop20_corpus(&corpus, &SubsetBudget::exhaustive()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn check_prop20_is_not_contradicted_by_the_pentagon() {
        // E(S) = S for a semilattice, so both levels fail together
        let report = check_prop20_corpus(&[n5()], &SubsetBudget::exhaustive()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn replay_confirms_the_pentagon_witness_and_rejects_a_doctored_one() {
        let (s, ord) = with_order(n5());
        let report = is_infinitely_distributive(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
        let w = report.witness.unwrap();
        assert_eq!(replay_witness(&s, &ord, &w), Replay::Confirmed);

        let mut swapped = w.clone();
        std::mem::swap(&mut swapped.left, &mut swapped.right);
        assert!(matches!(
            replay_witness(&s, &ord, &swapped),
            Replay::NotAViolation(_)
        ));

        // the same witness is no violation of a distributive member
        let (i2s, i2ord) = i2();
        assert!(matches!(
            replay_witness(&i2s, &i2ord, &w),
            Replay::NotAViolation(_)
        ));
    }

    #[test]
    fn enlarging_the_budget_never_unfails_a_verdict() {
        let (s, ord) = with_order(n5());
        let budgets = [
            SubsetBudget::bounded(2),
            SubsetBudget::bounded(3),
            SubsetBudget::bounded(3).with_samples(100, 9),
            SubsetBudget::exhaustive(),
        ];
        let mut witnesses = Vec::new();
        for budget in &budgets {
            let report = is_infinitely_distributive(&s, &ord, budget).unwrap();
            assert_eq!(report.verdict, Verdict::Fails);
            witnesses.push(report.witness.unwrap());
        }
        // the minimal witness is found by every budget here
        assert!(witnesses.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn bounded_mode_that_covers_everything_reports_holds() {
        let (s, ord) = with_order(cyclic_group(3).unwrap());
        let report = is_infinitely_distributive(&s, &ord, &SubsetBudget::bounded(3)).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        let report = is_infinitely_distributive(&s, &ord, &SubsetBudget::bounded(2)).unwrap();
        assert_eq!(report.verdict, Verdict::HoldsWithinBudget);
    }

    #[test]
    fn exhaustive_budget_errors_on_oversized_carriers() {
        let (s, ord) = with_order(symmetric_inverse_monoid(3).unwrap());
        let err = is_infinitely_distributive(&s, &ord, &SubsetBudget::exhaustive()).unwrap_err();
        assert!(matches!(err, BudgetError::ExhaustiveInfeasible { size: 34, .. }));
    }

    #[test]
    fn trivial_semigroup_passes_every_law() {
        let (s, ord) = with_order(cyclic_group(1).unwrap());
        let budget = SubsetBudget::exhaustive();
        assert_eq!(
            is_infinitely_distributive(&s, &ord, &budget).unwrap().verdict,
            Verdict::Holds
        );
        assert_eq!(check_lemma1(&s, &ord).verdict, Verdict::Holds);
        assert_eq!(check_lemma2(&s, &ord, &budget).unwrap().verdict, Verdict::Holds);
        assert_eq!(check_theorem(&s, &ord, &budget).unwrap().verdict, Verdict::Holds);
        assert_eq!(check_prop17(&s, &ord, &budget).unwrap().verdict, Verdict::Holds);
    }
}
