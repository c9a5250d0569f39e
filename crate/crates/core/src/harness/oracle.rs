//! A deliberately naive second implementation of `Cn` and answer sets.
//!
//! Nothing here touches the compiled rule index or bitsets used by the
//! engines: closure is a repeated full scan over `Rule` values held in
//! ordered sets.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Interpretation, Literal, Program, Rule, Universe};

/// Largest universe the exhaustive enumeration accepts.
pub const MAX_ORACLE_UNIVERSE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("universe of {size} literals exceeds the oracle limit of {MAX_ORACLE_UNIVERSE}")]
pub struct UniverseTooLarge {
    pub size: usize,
}

/// Every consistent subset of the universe, then `Lit`.
///
/// Subsets are listed by counting in base 3 over the atoms, least
/// significant first: digit 0 leaves the atom out, 1 adds it, 2 adds its
/// negation.
pub fn enumerate_subsets(
    universe: &Arc<Universe>,
) -> Result<impl Iterator<Item = Interpretation> + '_, UniverseTooLarge> {
    if universe.len() > MAX_ORACLE_UNIVERSE {
        return Err(UniverseTooLarge {
            size: universe.len(),
        });
    }
    let atoms = universe.atoms();
    let total = 3u64.pow(atoms.len() as u32);
    let consistent = (0..total).map(move |mut code| {
        let mut literals = Vec::new();
        for atom in atoms {
            match code % 3 {
                1 => literals.push(Literal::positive(atom.clone())),
                2 => literals.push(Literal::negative(atom.clone())),
                _ => {}
            }
            code /= 3;
        }
        Interpretation::from_literals(universe, &literals).expect("atoms of the universe")
    });
    let lit = (!universe.is_empty()).then(|| Interpretation::lit(universe));
    Ok(consistent.chain(lit))
}

/// `Cn` by naive closure. Returns `None` for `Lit`.
pub fn oracle_cn(rules: &[Rule]) -> Option<BTreeSet<Literal>> {
    let mut derived: BTreeSet<Literal> = BTreeSet::new();
    loop {
        let before = derived.len();
        for rule in rules {
            assert!(rule.nbody().is_empty(), "oracle Cn expects a basic program");
            if rule.pbody().iter().all(|l| derived.contains(l)) {
                derived.insert(rule.head().clone());
            }
        }
        if derived.iter().any(|l| derived.contains(&l.complement())) {
            return None;
        }
        if derived.len() == before {
            return Some(derived);
        }
    }
}

/// The reduct, computed against a plain set of literals.
pub fn oracle_reduct(rules: &[Rule], x: &BTreeSet<Literal>) -> Vec<Rule> {
    rules
        .iter()
        .filter(|r| r.nbody().iter().all(|l| !x.contains(l)))
        .map(|r| {
            Rule::new(r.name(), r.head().clone(), r.pbody().iter().cloned(), [])
                .expect("existing name")
        })
        .collect()
}

/// Converts an oracle result back into an interpretation over `universe`.
pub fn oracle_interpretation(
    universe: &Arc<Universe>,
    cn: Option<BTreeSet<Literal>>,
) -> Interpretation {
    match cn {
        None => Interpretation::lit(universe),
        Some(set) => Interpretation::from_literals(universe, &set).expect("heads of the program"),
    }
}

/// Every `X` over the universe with `Cn(Π^X) = X`.
pub fn oracle_answer_sets(p: &Program) -> Result<Vec<Interpretation>, UniverseTooLarge> {
    let universe = p.universe();
    let all: BTreeSet<Literal> = universe.literals().collect();
    let mut out = Vec::new();
    for candidate in enumerate_subsets(universe)? {
        let x: BTreeSet<Literal> = if candidate.is_lit() {
            all.clone()
        } else {
            candidate.as_set().iter().collect()
        };
        let closed = oracle_cn(&oracle_reduct(p.rules(), &x));
        let matches = match closed {
            None => candidate.is_lit(),
            Some(set) => !candidate.is_lit() && set == x,
        };
        if matches {
            out.push(candidate);
        }
    }
    Ok(out)
}
