//! Preferred well-founded semantics.
//!
//! The outer operator of the alternating fixpoint is strengthened: when rule
//! `r` is tested for applicability, its blocking context `Y` loses the
//! literals whose every supported generator is ranked below `r` and defeated
//! by `r` (or by what has already been derived). The inner operator stays the
//! unprioritized `C`.

use crate::classical::{c_op, model_from};
use crate::error::FixpointDivergence;
use crate::fixpoint::{cap_for, close, iterate, FixpointTrace};
use crate::syntax::{
    Interpretation, LiteralSet, OrderedProgram, PartialModel, Program, Rule, RuleId,
};

/// Which removal set shrinks a rule's blocking context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DSetVariant {
    /// All supported generators of a literal must be lower and defeated.
    Full,
    /// Heads of lower, defeated rules are removed regardless of other
    /// generators. Wrong when same-headed rules carry different priorities;
    /// kept as a negative control.
    Simplistic,
}

/// `r` defeats `r2` wrt `x` if `({head(r)} ∪ x) ∩ nbody(r2) ≠ ∅`.
pub fn defeats(r: &Rule, r2: &Rule, x: &LiteralSet) -> bool {
    r2.nbody().iter().any(|l| l == r.head() || x.contains(l))
}

fn defeats_compiled(p: &Program, r: RuleId, r2: RuleId, x: &LiteralSet) -> bool {
    let head = p.compiled(r).head;
    p.compiled(r2)
        .neg
        .iter()
        .any(|&l| l == head || x.contains_index(l))
}

/// Whether literal `l` belongs to the removal set of rule `r`.
fn removable(
    op: &OrderedProgram,
    r: RuleId,
    l: usize,
    x: &LiteralSet,
    y: &LiteralSet,
    variant: DSetVariant,
) -> bool {
    let p = op.program();
    let generators = p.generators(l).iter().copied();
    match variant {
        DSetVariant::Full => {
            y.contains_index(l)
                && generators
                    .filter(|&g| p.compiled(g).pos_within(y))
                    .all(|g| op.order().less(g, r) && defeats_compiled(p, r, g, x))
        }
        DSetVariant::Simplistic => generators
            .into_iter()
            .any(|g| op.order().less(g, r) && defeats_compiled(p, r, g, x)),
    }
}

/// `D^r_(x,y)`: literals of `y` all of whose generators `r'` with
/// `pbody(r') ⊆ y` satisfy `r' < r` and are defeated by `r` wrt `x`.
pub fn d_set(op: &OrderedProgram, r: RuleId, x: &LiteralSet, y: &LiteralSet) -> LiteralSet {
    LiteralSet::from_indices(
        op.universe(),
        y.indices()
            .filter(|&l| removable(op, r, l, x, y, DSetVariant::Full)),
    )
}

/// `{head(r') | r' < r, r defeats r' wrt x}`.
pub fn d_set_simplistic(op: &OrderedProgram, r: RuleId, x: &LiteralSet) -> LiteralSet {
    let p = op.program();
    LiteralSet::from_indices(
        op.universe(),
        p.rule_ids()
            .filter(|&g| op.order().less(g, r) && defeats_compiled(p, r, g, x))
            .map(|g| p.compiled(g).head),
    )
}

/// The removal set of one rule and the context left after removing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefeatContext {
    pub rule: RuleId,
    pub removed: LiteralSet,
    pub effective_context: LiteralSet,
}

pub fn defeat_context(
    op: &OrderedProgram,
    r: RuleId,
    x: &LiteralSet,
    y: &LiteralSet,
    variant: DSetVariant,
) -> DefeatContext {
    let removed = match variant {
        DSetVariant::Full => d_set(op, r, x, y),
        DSetVariant::Simplistic => d_set_simplistic(op, r, x),
    };
    let effective_context = y.difference(&removed);
    DefeatContext {
        rule: r,
        removed,
        effective_context,
    }
}

/// Heads of rules `r` active wrt `(x, y \ D^r_(x,y))`; `Lit` when `x` is
/// inconsistent.
pub fn tpn_step(
    op: &OrderedProgram,
    y: &Interpretation,
    x: &Interpretation,
    variant: DSetVariant,
) -> Interpretation {
    let p = op.program();
    if !x.is_consistent() {
        return Interpretation::lit(p.universe());
    }
    let (x, y) = (x.as_set(), y.as_set());
    let mut out = LiteralSet::empty(p.universe());
    for (id, c) in p.compiled_rules() {
        // Only the literals of nbody(r) ∩ y decide whether removal matters.
        let active = c.pos_within(x)
            && c.neg
                .iter()
                .all(|&l| !y.contains_index(l) || removable(op, id, l, x, y, variant));
        if active {
            out.insert_index(c.head);
        }
    }
    Interpretation::new(out)
}

/// Limit of `tpn_step(op, x, ·)` iterated from `∅`.
pub fn cpn_op(op: &OrderedProgram, x: &Interpretation, variant: DSetVariant) -> Interpretation {
    close(
        "C°",
        Interpretation::empty(op.universe()),
        cap_for(op.universe().len()),
        |z| {
            let next = tpn_step(op, x, z, variant);
            debug_assert!(z.is_subset(&next), "T° iterates must grow");
            next
        },
    )
}

/// `C°(C(x))`: the prioritized operator outside, the plain one inside.
pub fn apn_op(op: &OrderedProgram, x: &Interpretation, variant: DSetVariant) -> Interpretation {
    cpn_op(op, &c_op(op.program(), x), variant)
}

/// Least fixpoint of [`apn_op`], iterated from `∅`.
pub fn preferred_wfs_set(
    op: &OrderedProgram,
    variant: DSetVariant,
) -> Result<FixpointTrace<Interpretation>, FixpointDivergence> {
    iterate(
        "A°",
        Interpretation::empty(op.universe()),
        cap_for(op.universe().len()),
        |x| apn_op(op, x, variant),
    )
}

#[derive(Debug, Clone)]
pub struct PreferredWellFounded {
    pub model: PartialModel,
    pub trace: FixpointTrace<Interpretation>,
}

impl PreferredWellFounded {
    pub fn true_set(&self) -> &Interpretation {
        self.trace.result()
    }
}

/// `(X, Lit \ C(X))` for the preferred well-founded set `X`.
///
/// Literals of `X` are kept out of the false part. That only changes the
/// result when `X ⊄ C(X)`, which the simplistic variant can produce.
pub fn preferred_wf_model(
    op: &OrderedProgram,
    variant: DSetVariant,
) -> Result<PreferredWellFounded, FixpointDivergence> {
    let trace = preferred_wfs_set(op, variant)?;
    let x = trace.result();
    let model = model_from(x, &c_op(op.program(), x));
    Ok(PreferredWellFounded { model, trace })
}

/// Per outer step `k ≥ 1`, the removal set of every rule evaluated against
/// the context `C(X_{k-1})` and the step's result `X_k`.
pub fn defeat_trace(
    op: &OrderedProgram,
    trace: &FixpointTrace<Interpretation>,
    variant: DSetVariant,
) -> Vec<Vec<DefeatContext>> {
    trace
        .steps
        .windows(2)
        .map(|w| {
            let y = c_op(op.program(), &w[0].1);
            op.program()
                .rule_ids()
                .map(|r| defeat_context(op, r, w[1].1.as_set(), y.as_set(), variant))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::t_step;
    use crate::fixtures;

    fn set(op: &OrderedProgram, lits: &[&str]) -> LiteralSet {
        LiteralSet::parse(op.universe(), lits.iter().copied()).unwrap()
    }

    fn interp(op: &OrderedProgram, lits: &[&str]) -> Interpretation {
        Interpretation::new(set(op, lits))
    }

    fn id(op: &OrderedProgram, name: &str) -> RuleId {
        op.rule_id(name).unwrap()
    }

    #[test]
    fn defeat_relation() {
        let op = fixtures::mutual_block();
        let (r1, r2) = (&op.rules()[0], &op.rules()[1]);
        let empty = set(&op, &[]);
        assert!(defeats(r1, r2, &empty));
        assert!(defeats(r2, r1, &empty));
        let same_head = fixtures::same_head();
        let fact = &same_head.rules()[0];
        for r in same_head.rules() {
            assert!(!defeats(r, fact, &set(&same_head, &["a", "b"])));
        }
        // x alone can defeat.
        let settled = fixtures::settled_preference();
        assert!(defeats(
            &settled.rules()[0],
            &settled.rules()[1],
            &set(&settled, &["c"])
        ));
        assert!(!defeats(
            &settled.rules()[0],
            &settled.rules()[1],
            &empty_of(&settled)
        ));
    }

    fn empty_of(op: &OrderedProgram) -> LiteralSet {
        set(op, &[])
    }

    #[test]
    fn d_sets_on_mutual_block() {
        let op = fixtures::mutual_block();
        let (x, y) = (set(&op, &[]), set(&op, &["a", "b"]));
        assert_eq!(d_set(&op, id(&op, "r1"), &x, &y), set(&op, &["b"]));
        assert!(d_set(&op, id(&op, "r2"), &x, &y).is_empty());
        assert_eq!(d_set_simplistic(&op, id(&op, "r1"), &x), set(&op, &["b"]));
    }

    #[test]
    fn d_sets_on_same_head() {
        let op = fixtures::same_head();
        let (x, y) = (set(&op, &[]), set(&op, &["a", "b"]));
        // a is also generated by r1, which is not below r2.
        assert!(d_set(&op, id(&op, "r2"), &x, &y).is_empty());
        assert_eq!(d_set_simplistic(&op, id(&op, "r2"), &x), set(&op, &["a"]));
        assert!(d_set_simplistic(&op, id(&op, "r3"), &x).is_empty());
    }

    #[test]
    fn removal_set_stays_inside_context() {
        let op = fixtures::same_head();
        let y = set(&op, &["a", "b"]);
        for r in op.program().rule_ids() {
            let ctx = defeat_context(&op, r, &empty_of(&op), &y, DSetVariant::Full);
            assert!(ctx.removed.is_subset(&y));
            assert_eq!(ctx.effective_context.union(&ctx.removed), y);
        }
    }

    #[test]
    fn tpn_step_examples() {
        let op = fixtures::mutual_block();
        let (y, x) = (interp(&op, &["a", "b"]), interp(&op, &[]));
        assert_eq!(
            tpn_step(&op, &y, &x, DSetVariant::Full),
            interp(&op, &["a"])
        );
        let lit = Interpretation::lit(op.universe());
        assert!(tpn_step(&op, &y, &lit, DSetVariant::Full).is_lit());

        // Without preferences and on a context C(x), T° is T.
        let unordered = op.without_order();
        for x in [vec![], vec!["a"], vec!["b"], vec!["a", "b"]] {
            let x = interp(&op, &x);
            let y = c_op(op.program(), &x);
            for z in [vec![], vec!["a"], vec!["b"]] {
                let z = interp(&op, &z);
                assert_eq!(
                    tpn_step(&unordered, &y, &z, DSetVariant::Full),
                    t_step(op.program(), &y, &z)
                );
            }
        }
    }

    #[test]
    fn cpn_op_examples() {
        let op = fixtures::mutual_block();
        assert_eq!(
            cpn_op(&op, &interp(&op, &["a", "b"]), DSetVariant::Full),
            interp(&op, &["a"])
        );
        let same_head = fixtures::same_head();
        let ab = interp(&same_head, &["a", "b"]);
        assert_eq!(
            cpn_op(&same_head, &ab, DSetVariant::Full),
            interp(&same_head, &["a"])
        );
        assert_eq!(cpn_op(&same_head, &ab, DSetVariant::Simplistic), ab);
    }

    #[test]
    fn apn_op_examples() {
        let op = fixtures::mutual_block();
        let a = interp(&op, &["a"]);
        assert_eq!(apn_op(&op, &interp(&op, &[]), DSetVariant::Full), a);
        assert_eq!(apn_op(&op, &a, DSetVariant::Full), a);
        let settled = fixtures::settled_preference();
        assert_eq!(
            apn_op(&settled, &interp(&settled, &[]), DSetVariant::Full),
            interp(&settled, &["b"])
        );
    }

    #[test]
    fn preferred_sets_and_models() {
        let op = fixtures::mutual_block();
        let w = preferred_wf_model(&op, DSetVariant::Full).unwrap();
        assert_eq!(w.model.true_set().sorted_strings(), ["a"]);
        assert_eq!(w.model.false_set().sorted_strings(), ["-a", "-b", "b"]);

        let settled = fixtures::settled_preference();
        let w = preferred_wf_model(&settled, DSetVariant::Full).unwrap();
        assert_eq!(w.model.true_set().sorted_strings(), ["b"]);

        let same_head = fixtures::same_head();
        let w = preferred_wf_model(&same_head, DSetVariant::Full).unwrap();
        assert_eq!(w.model.true_set().sorted_strings(), ["a"]);
        assert_eq!(w.model.false_set().sorted_strings(), ["-a", "-b", "b"]);
        let s = preferred_wf_model(&same_head, DSetVariant::Simplistic).unwrap();
        assert_eq!(s.model.true_set().sorted_strings(), ["a", "b"]);
        assert_eq!(s.model.false_set().sorted_strings(), ["-a", "-b"]);

        let d = fixtures::defeasible();
        let w = preferred_wf_model(&d, DSetVariant::Full).unwrap();
        assert_eq!(w.model.true_set().sorted_strings(), ["p", "q"]);
    }

    #[test]
    fn defeat_trace_on_mutual_block() {
        let op = fixtures::mutual_block();
        let w = preferred_wf_model(&op, DSetVariant::Full).unwrap();
        let dsets = defeat_trace(&op, &w.trace, DSetVariant::Full);
        assert_eq!(dsets.len(), w.trace.applications());
        assert_eq!(dsets[0][0].removed, set(&op, &["b"]));
        assert!(dsets[0][1].removed.is_empty());
    }
}
