//! Unprioritized semantics: the reduct, `Cn`, the extended immediate
//! consequence operator, `C`, `A = C∘C`, answer sets and the well-founded
//! model.

use crate::error::{FixpointDivergence, ProgramError};
use crate::fixpoint::{cap_for, close, iterate, FixpointTrace};
use crate::syntax::{Interpretation, LiteralSet, PartialModel, Program, Rule};

/// Largest number of distinct heads the answer-set enumerators accept.
pub const MAX_CANDIDATE_HEADS: usize = 24;

/// `pbody(r) ⊆ x` and `nbody(r) ∩ y = ∅`.
pub fn is_active(rule: &Rule, x: &LiteralSet, y: &LiteralSet) -> bool {
    rule.pbody().iter().all(|l| x.contains(l)) && !rule.nbody().iter().any(|l| y.contains(l))
}

/// Rules whose negative body misses `x`, with the negative body stripped.
pub fn reduct(p: &Program, x: &Interpretation) -> Program {
    let rules = p
        .rule_ids()
        .filter(|&id| p.compiled(id).neg_misses(x.as_set()))
        .map(|id| p.rule(id).reduct())
        .collect();
    Program::with_universe(rules, p.universe().clone()).expect("same universe")
}

/// The smallest logically closed set closed under a basic program.
pub fn cn(p: &Program) -> Interpretation {
    assert!(p.is_basic(), "cn is only defined for basic programs");
    let empty = Interpretation::empty(p.universe());
    close("Cn", empty.clone(), cap_for(p.universe().len()), |x| {
        t_step(p, &empty, x)
    })
}

/// Heads of the rules active wrt `(x, y)`, or `Lit` when `x` is inconsistent.
pub fn t_step(p: &Program, y: &Interpretation, x: &Interpretation) -> Interpretation {
    if !x.is_consistent() {
        return Interpretation::lit(p.universe());
    }
    let mut out = LiteralSet::empty(p.universe());
    for (_, c) in p.compiled_rules() {
        if c.pos_within(x.as_set()) && c.neg_misses(y.as_set()) {
            out.insert_index(c.head);
        }
    }
    Interpretation::new(out)
}

/// `C(x) = Cn(Π^x)`.
pub fn c_op(p: &Program, x: &Interpretation) -> Interpretation {
    let via_reduct = cn(&reduct(p, x));
    debug_assert_eq!(
        via_reduct,
        c_op_iterated(p, x),
        "Cn(reduct) and iterated T disagree"
    );
    via_reduct
}

/// `C(x)` as the limit of `T_{Π,x}` iterated from `∅`.
pub fn c_op_iterated(p: &Program, x: &Interpretation) -> Interpretation {
    close(
        "C",
        Interpretation::empty(p.universe()),
        cap_for(p.universe().len()),
        |z| t_step(p, x, z),
    )
}

pub fn a_op(p: &Program, x: &Interpretation) -> Interpretation {
    c_op(p, &c_op(p, x))
}

/// Consistent subsets of the heads, followed by `Lit` if the universe is
/// nonempty. Every consistent answer set is among them.
pub(crate) fn candidates(p: &Program) -> Result<Vec<Interpretation>, ProgramError> {
    let heads: Vec<usize> = p.heads().indices().collect();
    if heads.len() > MAX_CANDIDATE_HEADS {
        return Err(ProgramError::TooManyCandidates {
            heads: heads.len(),
            limit: MAX_CANDIDATE_HEADS,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << heads.len()) {
        let set = LiteralSet::from_indices(
            p.universe(),
            heads
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &i)| i),
        );
        if set.is_consistent() {
            out.push(Interpretation::new(set));
        }
    }
    if !p.universe().is_empty() {
        out.push(Interpretation::lit(p.universe()));
    }
    Ok(out)
}

/// All `X` with `Cn(Π^X) = X`, by exhaustive candidate check.
pub fn answer_sets(p: &Program) -> Result<Vec<Interpretation>, ProgramError> {
    Ok(candidates(p)?
        .into_iter()
        .filter(|x| c_op(p, x) == *x)
        .collect())
}

/// A model together with the outer iterates that produced its true set.
#[derive(Debug, Clone)]
pub struct WellFounded {
    pub model: PartialModel,
    pub trace: FixpointTrace<Interpretation>,
}

impl WellFounded {
    pub fn true_set(&self) -> &Interpretation {
        self.trace.result()
    }
}

/// `(X, Lit \ c)` with any literal of `X` kept out of the false part.
pub(crate) fn model_from(x: &Interpretation, c: &Interpretation) -> PartialModel {
    model_from_sets(x.as_set(), c.as_set())
}

pub(crate) fn model_from_sets(x: &LiteralSet, c: &LiteralSet) -> PartialModel {
    let false_set = c.complement().difference(x);
    PartialModel::new(x.clone(), false_set).expect("disjoint by construction")
}

/// `(lfp A, Lit \ C(lfp A))`.
pub fn well_founded_model(p: &Program) -> Result<WellFounded, FixpointDivergence> {
    let trace = iterate(
        "A",
        Interpretation::empty(p.universe()),
        cap_for(p.universe().len()),
        |x| a_op(p, x),
    )?;
    let x = trace.result();
    let model = model_from(x, &c_op(p, x));
    Ok(WellFounded { model, trace })
}
