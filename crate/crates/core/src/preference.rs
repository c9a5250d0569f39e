//! The prioritized consequence operator used for preferred answer sets, its
//! alternating transformation, and the least alternating fixpoint built from
//! it (which turns out to be no stronger than the unprioritized one).

use crate::classical::{candidates, model_from};
use crate::error::{FixpointDivergence, ProgramError};
use crate::fixpoint::{cap_for, close, iterate, FixpointTrace};
use crate::syntax::{Interpretation, LiteralSet, OrderedProgram, PartialModel};

/// Heads of rules `r` active wrt `(x, y)` such that no `r' > r` is active
/// wrt `(y, x)` with `head(r') ∉ x`. `Lit` when `x` is inconsistent.
pub fn tp_step(op: &OrderedProgram, y: &Interpretation, x: &Interpretation) -> Interpretation {
    let p = op.program();
    if !x.is_consistent() {
        return Interpretation::lit(p.universe());
    }
    let (x, y) = (x.as_set(), y.as_set());
    let mut out = LiteralSet::empty(p.universe());
    for (id, c) in p.compiled_rules() {
        if !(c.pos_within(x) && c.neg_misses(y)) {
            continue;
        }
        let blocked = op.order().above(id).any(|hi| {
            let h = p.compiled(hi);
            h.pos_within(y) && h.neg_misses(x) && !x.contains_index(h.head)
        });
        if !blocked {
            out.insert_index(c.head);
        }
    }
    Interpretation::new(out)
}

/// Limit of `tp_step(op, x, ·)` iterated from `∅`.
pub fn cp_op(op: &OrderedProgram, x: &Interpretation) -> Interpretation {
    close(
        "C<",
        Interpretation::empty(op.universe()),
        cap_for(op.universe().len()),
        |z| {
            let next = tp_step(op, x, z);
            debug_assert!(z.is_subset(&next), "prioritized iterates must grow");
            next
        },
    )
}

pub fn ap_op(op: &OrderedProgram, x: &Interpretation) -> Interpretation {
    cp_op(op, &cp_op(op, x))
}

/// Fixpoints of [`cp_op`] among the answer-set candidates.
pub fn preferred_answer_sets(op: &OrderedProgram) -> Result<Vec<Interpretation>, ProgramError> {
    Ok(candidates(op.program())?
        .into_iter()
        .filter(|x| cp_op(op, x) == *x)
        .collect())
}

/// Least fixpoint of [`ap_op`], iterated from `∅`.
pub fn lfp_ap(op: &OrderedProgram) -> Result<FixpointTrace<Interpretation>, FixpointDivergence> {
    iterate(
        "A<",
        Interpretation::empty(op.universe()),
        cap_for(op.universe().len()),
        |x| ap_op(op, x),
    )
}

/// `(lfp A<, Lit \ C<(lfp A<))`.
pub fn lfp_ap_model(
    op: &OrderedProgram,
) -> Result<(PartialModel, FixpointTrace<Interpretation>), FixpointDivergence> {
    let trace = lfp_ap(op)?;
    let x = trace.result();
    Ok((model_from(x, &cp_op(op, x)), trace))
}
