//! Paraconsistent variant: the closure `Cl` never collapses to `Lit`, and a
//! rule's blocking context is the closure of the reduct with the rules it
//! defeats taken out.
//!
//! The alternating operator maps `X` to the limit of [`t_star_step`] with
//! context-generating set `X`. The context of rule `r` is
//! `Cl(Π^X \ (Π^r_x)^+)`, so the unprioritized `C*(X) = Cl(Π^X)` sits inside
//! the context rather than being applied as a separate inner pass. With an
//! empty order this is exactly `C*∘C*`.

use crate::classical::model_from_sets;
use crate::error::FixpointDivergence;
use crate::fixpoint::{cap_for, close, iterate, FixpointTrace};
use crate::syntax::{LiteralSet, OrderedProgram, PartialModel, Program, RuleId};

/// Smallest set closed under a basic program, without logical closure.
pub fn cl(p: &Program) -> LiteralSet {
    assert!(p.is_basic(), "cl is only defined for basic programs");
    closure_of(p, p.rule_ids())
}

/// Closure of the reducts of `rules`, ignoring their negative bodies.
fn closure_of(p: &Program, rules: impl Iterator<Item = RuleId>) -> LiteralSet {
    let rules: Vec<RuleId> = rules.collect();
    let mut set = LiteralSet::empty(p.universe());
    loop {
        let mut grew = false;
        for &id in &rules {
            let c = p.compiled(id);
            if !set.contains_index(c.head) && c.pos_within(&set) {
                set.insert_index(c.head);
                grew = true;
            }
        }
        if !grew {
            return set;
        }
    }
}

/// `C*(x) = Cl(Π^x)`.
pub fn c_star(p: &Program, x: &LiteralSet) -> LiteralSet {
    closure_of(p, p.rule_ids().filter(|&id| p.compiled(id).neg_misses(x)))
}

/// `Π^r_x`: rules below `r` whose negative body meets `{head(r)} ∪ x`.
pub fn defeated_rules(op: &OrderedProgram, r: RuleId, x: &LiteralSet) -> Vec<RuleId> {
    let p = op.program();
    let head = p.compiled(r).head;
    p.rule_ids()
        .filter(|&g| {
            op.order().less(g, r)
                && p.compiled(g)
                    .neg
                    .iter()
                    .any(|&l| l == head || x.contains_index(l))
        })
        .collect()
}

/// Heads of rules `r` with `pbody(r) ⊆ x` and
/// `nbody(r) ∩ Cl(Π^y \ (Π^r_x)^+) = ∅`. Never collapses to `Lit`.
pub fn t_star_step(op: &OrderedProgram, y: &LiteralSet, x: &LiteralSet) -> LiteralSet {
    let p = op.program();
    let surviving: Vec<RuleId> = p
        .rule_ids()
        .filter(|&id| p.compiled(id).neg_misses(y))
        .collect();
    let shared = closure_of(p, surviving.iter().copied());
    let mut out = LiteralSet::empty(p.universe());
    for (id, c) in p.compiled_rules() {
        if !c.pos_within(x) {
            continue;
        }
        let defeated = defeated_rules(op, id, x);
        let context = if defeated.iter().any(|d| surviving.contains(d)) {
            closure_of(
                p,
                surviving.iter().copied().filter(|s| !defeated.contains(s)),
            )
        } else {
            shared.clone()
        };
        if c.neg_misses(&context) {
            out.insert_index(c.head);
        }
    }
    out
}

/// `C*_<(y)`: limit of `t_star_step(op, y, ·)` iterated from `∅`.
pub fn c_star_pref(op: &OrderedProgram, y: &LiteralSet) -> LiteralSet {
    close(
        "C*<",
        LiteralSet::empty(op.universe()),
        cap_for(op.universe().len()),
        |z| t_star_step(op, y, z),
    )
}

/// Least fixpoint of the prioritized paraconsistent alternating operator.
pub fn brewka_wf_set(op: &OrderedProgram) -> Result<FixpointTrace<LiteralSet>, FixpointDivergence> {
    iterate(
        "A*",
        LiteralSet::empty(op.universe()),
        cap_for(op.universe().len()),
        |x| c_star_pref(op, x),
    )
}

#[derive(Debug, Clone)]
pub struct BrewkaWellFounded {
    pub model: PartialModel,
    pub trace: FixpointTrace<LiteralSet>,
}

/// `(X, Lit \ C*(X))` for the well-founded set `X`, with `X` kept out of the
/// false part.
pub fn brewka_model(op: &OrderedProgram) -> Result<BrewkaWellFounded, FixpointDivergence> {
    let trace = brewka_wf_set(op)?;
    let x = trace.result();
    let model = model_from_sets(x, &c_star(op.program(), x));
    Ok(BrewkaWellFounded { model, trace })
}

/// Per outer step `k ≥ 1`, the rules each rule defeats wrt `X_k`.
pub fn brewka_defeat_trace(
    op: &OrderedProgram,
    trace: &FixpointTrace<LiteralSet>,
) -> Vec<Vec<(RuleId, Vec<RuleId>)>> {
    trace
        .steps
        .iter()
        .skip(1)
        .map(|(_, x)| {
            op.program()
                .rule_ids()
                .map(|r| (r, defeated_rules(op, r, x)))
                .collect()
        })
        .collect()
}
