//! Literals, rules, ordered programs and the sets of literals every operator
//! consumes and produces.
//!
//! The literal universe of a program is finite: it holds `A` and `-A` for
//! every atom `A` mentioned anywhere in the program. Sets of literals are
//! bitsets indexed by that universe, where literal `2i` is the `i`-th atom
//! and `2i + 1` its classical negation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::ProgramError;

/// Returns true if `s` belongs to the identifier class shared by atoms and
/// rule names: a lowercase ASCII letter followed by letters, digits or `_`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Result<Self, ProgramError> {
        if is_identifier(name) {
            Ok(Atom(name.into()))
        } else {
            Err(ProgramError::InvalidIdentifier(name.to_owned()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An atom or its classical negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    atom: Atom,
    negated: bool,
}

impl Literal {
    pub fn new(atom: Atom, negated: bool) -> Self {
        Literal { atom, negated }
    }

    pub fn positive(atom: Atom) -> Self {
        Literal::new(atom, false)
    }

    pub fn negative(atom: Atom) -> Self {
        Literal::new(atom, true)
    }

    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    pub fn complement(&self) -> Literal {
        Literal::new(self.atom.clone(), !self.negated)
    }
}

pub fn complement(l: &Literal) -> Literal {
    l.complement()
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(self.atom.name())
    }
}

impl FromStr for Literal {
    type Err = ProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.strip_prefix('-') {
            Some(rest) => Ok(Literal::negative(Atom::new(rest)?)),
            None => Ok(Literal::positive(Atom::new(s)?)),
        }
    }
}

/// A named rule `head :- pbody, not nbody`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    name: String,
    head: Literal,
    pbody: BTreeSet<Literal>,
    nbody: BTreeSet<Literal>,
}

impl Rule {
    pub fn new(
        name: impl Into<String>,
        head: Literal,
        pbody: impl IntoIterator<Item = Literal>,
        nbody: impl IntoIterator<Item = Literal>,
    ) -> Result<Self, ProgramError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(ProgramError::InvalidIdentifier(name));
        }
        Ok(Rule {
            name,
            head,
            pbody: pbody.into_iter().collect(),
            nbody: nbody.into_iter().collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn head(&self) -> &Literal {
        &self.head
    }

    pub fn pbody(&self) -> &BTreeSet<Literal> {
        &self.pbody
    }

    pub fn nbody(&self) -> &BTreeSet<Literal> {
        &self.nbody
    }

    pub fn is_basic(&self) -> bool {
        self.nbody.is_empty()
    }

    /// The rule `head :- pbody` with the negative body dropped.
    pub fn reduct(&self) -> Rule {
        Rule {
            name: self.name.clone(),
            head: self.head.clone(),
            pbody: self.pbody.clone(),
            nbody: BTreeSet::new(),
        }
    }

    pub(crate) fn literals(&self) -> impl Iterator<Item = &Literal> {
        std::iter::once(&self.head)
            .chain(self.pbody.iter())
            .chain(self.nbody.iter())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.head)?;
        let body: Vec<String> = self
            .pbody
            .iter()
            .map(|l| l.to_string())
            .chain(self.nbody.iter().map(|l| format!("not {l}")))
            .collect();
        if !body.is_empty() {
            write!(f, " :- {}", body.join(", "))?;
        }
        f.write_str(".")
    }
}

/// Position of a rule inside its program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId(pub usize);

/// The finite literal universe of a program.
#[derive(Debug, PartialEq, Eq)]
pub struct Universe {
    atoms: Vec<Atom>,
    index: HashMap<Atom, usize>,
}

impl Universe {
    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let atoms: Vec<Atom> = atoms
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = atoms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        Universe { atoms, index }
    }

    /// Number of literals (twice the number of atoms).
    pub fn len(&self) -> usize {
        self.atoms.len() * 2
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn literal(&self, index: usize) -> Literal {
        Literal::new(self.atoms[index / 2].clone(), index % 2 == 1)
    }

    pub fn index_of(&self, literal: &Literal) -> Option<usize> {
        self.index
            .get(literal.atom())
            .map(|i| 2 * i + usize::from(literal.is_negated()))
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        (0..self.len()).map(|i| self.literal(i))
    }
}

/// A raw set of literals over a fixed universe. May be inconsistent.
#[derive(Clone)]
pub struct LiteralSet {
    universe: Arc<Universe>,
    bits: FixedBitSet,
}

impl LiteralSet {
    pub fn empty(universe: &Arc<Universe>) -> Self {
        LiteralSet {
            universe: Arc::clone(universe),
            bits: FixedBitSet::with_capacity(universe.len()),
        }
    }

    pub fn full(universe: &Arc<Universe>) -> Self {
        let mut set = LiteralSet::empty(universe);
        set.bits.insert_range(..);
        set
    }

    pub fn from_literals<'a>(
        universe: &Arc<Universe>,
        literals: impl IntoIterator<Item = &'a Literal>,
    ) -> Result<Self, ProgramError> {
        let mut set = LiteralSet::empty(universe);
        for l in literals {
            let i = universe
                .index_of(l)
                .ok_or_else(|| ProgramError::UnknownLiteral(l.to_string()))?;
            set.bits.insert(i);
        }
        Ok(set)
    }

    /// Parses literal strings such as `"a"` or `"-b"`.
    pub fn parse<'a>(
        universe: &Arc<Universe>,
        literals: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, ProgramError> {
        let parsed = literals
            .into_iter()
            .map(Literal::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        LiteralSet::from_literals(universe, &parsed)
    }

    pub(crate) fn from_indices(
        universe: &Arc<Universe>,
        indices: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut set = LiteralSet::empty(universe);
        set.bits.extend(indices);
        set
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, literal: &Literal) -> bool {
        self.universe
            .index_of(literal)
            .is_some_and(|i| self.bits.contains(i))
    }

    pub(crate) fn contains_index(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub(crate) fn insert_index(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub(crate) fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn insert(&mut self, literal: &Literal) -> Result<(), ProgramError> {
        let i = self
            .universe
            .index_of(literal)
            .ok_or_else(|| ProgramError::UnknownLiteral(literal.to_string()))?;
        self.bits.insert(i);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = Literal> + '_ {
        self.bits.ones().map(|i| self.universe.literal(i))
    }

    pub fn is_subset(&self, other: &LiteralSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &LiteralSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &LiteralSet) -> LiteralSet {
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        out
    }

    pub fn intersection(&self, other: &LiteralSet) -> LiteralSet {
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        out
    }

    pub fn difference(&self, other: &LiteralSet) -> LiteralSet {
        let mut out = self.clone();
        out.bits.difference_with(&other.bits);
        out
    }

    /// The universe minus this set.
    pub fn complement(&self) -> LiteralSet {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }

    /// True if no atom occurs both positively and negated.
    pub fn is_consistent(&self) -> bool {
        self.bits
            .ones()
            .all(|i| i % 2 == 1 || !self.bits.contains(i + 1))
    }

    /// Literal strings, sorted lexicographically.
    pub fn sorted_strings(&self) -> Vec<String> {
        let mut out: Vec<String> = self.iter().map(|l| l.to_string()).collect();
        out.sort();
        out
    }
}

impl PartialEq for LiteralSet {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(
            Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe,
            "comparing literal sets over different universes"
        );
        self.bits == other.bits
    }
}

impl Eq for LiteralSet {}

impl fmt::Debug for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.sorted_strings().join(", "))
    }
}

/// A logically closed set of literals: consistent, or the whole universe.
///
/// Construction collapses any inconsistent set to the universe, so an
/// interpretation never holds a raw contradictory set.
#[derive(Clone, PartialEq, Eq)]
pub struct Interpretation(LiteralSet);

impl Interpretation {
    pub fn new(set: LiteralSet) -> Self {
        if set.is_consistent() {
            Interpretation(set)
        } else {
            Interpretation(LiteralSet::full(set.universe()))
        }
    }

    pub fn empty(universe: &Arc<Universe>) -> Self {
        Interpretation(LiteralSet::empty(universe))
    }

    /// The inconsistent interpretation `Lit`.
    pub fn lit(universe: &Arc<Universe>) -> Self {
        Interpretation(LiteralSet::full(universe))
    }

    pub fn from_literals<'a>(
        universe: &Arc<Universe>,
        literals: impl IntoIterator<Item = &'a Literal>,
    ) -> Result<Self, ProgramError> {
        LiteralSet::from_literals(universe, literals).map(Interpretation::new)
    }

    pub fn parse<'a>(
        universe: &Arc<Universe>,
        literals: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, ProgramError> {
        LiteralSet::parse(universe, literals).map(Interpretation::new)
    }

    /// True if this is `Lit` over a nonempty universe.
    pub fn is_lit(&self) -> bool {
        !self.0.is_consistent()
    }

    pub fn is_consistent(&self) -> bool {
        self.0.is_consistent()
    }

    pub fn as_set(&self) -> &LiteralSet {
        &self.0
    }

    pub fn into_set(self) -> LiteralSet {
        self.0
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.0.universe()
    }

    pub fn contains(&self, literal: &Literal) -> bool {
        self.0.contains(literal)
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_lit() {
            f.write_str("Lit")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A three-valued interpretation: disjoint true and false sets, everything
/// else in the universe is unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialModel {
    true_set: LiteralSet,
    false_set: LiteralSet,
}

impl PartialModel {
    /// Returns `None` if the sets overlap.
    pub fn new(true_set: LiteralSet, false_set: LiteralSet) -> Option<Self> {
        true_set.is_disjoint(&false_set).then_some(PartialModel {
            true_set,
            false_set,
        })
    }

    pub fn true_set(&self) -> &LiteralSet {
        &self.true_set
    }

    pub fn false_set(&self) -> &LiteralSet {
        &self.false_set
    }

    pub fn unknown_set(&self) -> LiteralSet {
        self.true_set.union(&self.false_set).complement()
    }

    /// True if nothing is unknown.
    pub fn is_two_valued(&self) -> bool {
        self.unknown_set().is_empty()
    }

    /// Drops every literal that fails `keep` from all three parts.
    pub fn restrict(&self, keep: &LiteralSet) -> (LiteralSet, LiteralSet, LiteralSet) {
        (
            self.true_set.intersection(keep),
            self.false_set.intersection(keep),
            self.unknown_set().intersection(keep),
        )
    }
}

impl fmt::Display for PartialModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "true: {} false: {} unknown: {}",
            self.true_set,
            self.false_set,
            self.unknown_set()
        )
    }
}

#[derive(Debug, Clone)]
pub(crate) struct CompiledRule {
    pub head: usize,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
}

impl CompiledRule {
    pub fn pos_within(&self, x: &LiteralSet) -> bool {
        self.pos.iter().all(|&i| x.contains_index(i))
    }

    pub fn neg_misses(&self, y: &LiteralSet) -> bool {
        self.neg.iter().all(|&i| !y.contains_index(i))
    }
}

/// A finite set of rules over an explicit literal universe.
#[derive(Debug, Clone)]
pub struct Program {
    rules: Vec<Rule>,
    universe: Arc<Universe>,
    compiled: Vec<CompiledRule>,
    generators: Vec<Vec<RuleId>>,
}

impl Program {
    /// Builds a program whose universe is derived from its own atoms.
    pub fn new(rules: Vec<Rule>) -> Self {
        let universe = Arc::new(Universe::from_atoms(
            rules
                .iter()
                .flat_map(|r| r.literals().map(|l| l.atom().clone())),
        ));
        Program::with_universe(rules, universe).expect("universe derived from the rules")
    }

    /// Builds a program over a given universe, e.g. a reduct that must keep
    /// its parent's `Lit`.
    pub fn with_universe(rules: Vec<Rule>, universe: Arc<Universe>) -> Result<Self, ProgramError> {
        let index = |l: &Literal| {
            universe
                .index_of(l)
                .ok_or_else(|| ProgramError::UnknownLiteral(l.to_string()))
        };
        let compiled = rules
            .iter()
            .map(|r| {
                Ok(CompiledRule {
                    head: index(r.head())?,
                    pos: r.pbody().iter().map(index).collect::<Result<_, _>>()?,
                    neg: r.nbody().iter().map(index).collect::<Result<_, _>>()?,
                })
            })
            .collect::<Result<Vec<_>, ProgramError>>()?;
        let mut generators = vec![Vec::new(); universe.len()];
        for (i, c) in compiled.iter().enumerate() {
            generators[c.head].push(RuleId(i));
        }
        Ok(Program {
            rules,
            universe,
            compiled,
            generators,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: RuleId) -> &Rule {
        &self.rules[id.0]
    }

    pub fn rule_ids(&self) -> impl Iterator<Item = RuleId> {
        (0..self.rules.len()).map(RuleId)
    }

    pub fn rule_id(&self, name: &str) -> Option<RuleId> {
        self.rules.iter().position(|r| r.name() == name).map(RuleId)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn is_basic(&self) -> bool {
        self.rules.iter().all(Rule::is_basic)
    }

    /// All rule heads.
    pub fn heads(&self) -> LiteralSet {
        LiteralSet::from_indices(&self.universe, self.compiled.iter().map(|c| c.head))
    }

    pub(crate) fn compiled(&self, id: RuleId) -> &CompiledRule {
        &self.compiled[id.0]
    }

    pub(crate) fn compiled_rules(&self) -> impl Iterator<Item = (RuleId, &CompiledRule)> {
        self.compiled
            .iter()
            .enumerate()
            .map(|(i, c)| (RuleId(i), c))
    }

    /// Rules whose head is the literal at `index`.
    pub(crate) fn generators(&self, index: usize) -> &[RuleId] {
        &self.generators[index]
    }
}

/// The transitively closed, irreflexive preference relation on rules.
/// `lower < higher` means `higher` has priority.
#[derive(Debug, Clone)]
pub struct PreferenceOrder {
    names: Vec<String>,
    generating: BTreeSet<(String, String)>,
    above: Vec<FixedBitSet>,
}

impl PreferenceOrder {
    pub fn empty(rules: &[Rule]) -> Self {
        PreferenceOrder {
            names: rules.iter().map(|r| r.name().to_owned()).collect(),
            generating: BTreeSet::new(),
            above: vec![FixedBitSet::with_capacity(rules.len()); rules.len()],
        }
    }

    /// Closes `pairs` transitively, rejecting unknown names and cycles.
    pub fn validate(
        pairs: impl IntoIterator<Item = (String, String)>,
        rules: &[Rule],
    ) -> Result<Self, ProgramError> {
        let mut order = PreferenceOrder::empty(rules);
        let position: HashMap<&str, usize> = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.name(), i))
            .collect();
        let lookup = |name: &str| {
            position
                .get(name)
                .copied()
                .ok_or_else(|| ProgramError::UnknownRule {
                    name: name.to_owned(),
                })
        };
        for (lower, higher) in pairs {
            let (lo, hi) = (lookup(&lower)?, lookup(&higher)?);
            order.above[lo].insert(hi);
            order.generating.insert((lower, higher));
        }
        let n = rules.len();
        for k in 0..n {
            let via = order.above[k].clone();
            for i in 0..n {
                if order.above[i].contains(k) {
                    order.above[i].union_with(&via);
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| order.above[i].contains(i)) {
            return Err(ProgramError::CyclicOrder {
                rule: order.names[i].clone(),
            });
        }
        Ok(order)
    }

    /// `lower < higher` in the closed order.
    pub fn less(&self, lower: RuleId, higher: RuleId) -> bool {
        self.above[lower.0].contains(higher.0)
    }

    /// Rules strictly above `r`.
    pub fn above(&self, r: RuleId) -> impl Iterator<Item = RuleId> + '_ {
        self.above[r.0].ones().map(RuleId)
    }

    pub fn is_empty(&self) -> bool {
        self.generating.is_empty()
    }

    /// The pairs as declared, before closure.
    pub fn generating_pairs(&self) -> &BTreeSet<(String, String)> {
        &self.generating
    }

    /// Every `(lower, higher)` pair of the closure.
    pub fn closed_pairs(&self) -> BTreeSet<(String, String)> {
        self.above
            .iter()
            .enumerate()
            .flat_map(|(lo, hs)| {
                hs.ones()
                    .map(move |hi| (self.names[lo].clone(), self.names[hi].clone()))
            })
            .collect()
    }
}

pub fn validate_order(
    pairs: impl IntoIterator<Item = (String, String)>,
    rules: &[Rule],
) -> Result<PreferenceOrder, ProgramError> {
    PreferenceOrder::validate(pairs, rules)
}

/// A program together with a validated preference order.
#[derive(Debug, Clone)]
pub struct OrderedProgram {
    program: Program,
    order: PreferenceOrder,
}

impl OrderedProgram {
    pub fn new(
        rules: Vec<Rule>,
        pairs: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, ProgramError> {
        let mut seen = BTreeSet::new();
        for r in &rules {
            if !seen.insert(r.name()) {
                return Err(ProgramError::DuplicateName(r.name().to_owned()));
            }
        }
        let order = PreferenceOrder::validate(pairs, &rules)?;
        Ok(OrderedProgram {
            program: Program::new(rules),
            order,
        })
    }

    pub fn unordered(rules: Vec<Rule>) -> Result<Self, ProgramError> {
        OrderedProgram::new(rules, std::iter::empty())
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn order(&self) -> &PreferenceOrder {
        &self.order
    }

    pub fn rules(&self) -> &[Rule] {
        self.program.rules()
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.program.universe()
    }

    pub fn rule_id(&self, name: &str) -> Option<RuleId> {
        self.program.rule_id(name)
    }

    /// Same rules, empty order.
    pub fn without_order(&self) -> OrderedProgram {
        OrderedProgram {
            program: self.program.clone(),
            order: PreferenceOrder::empty(self.program.rules()),
        }
    }

    /// `Lit` as a set.
    pub fn literal_universe(&self) -> LiteralSet {
        LiteralSet::full(self.universe())
    }

    /// Literals occurring verbatim somewhere in the rules.
    pub fn mentioned_literals(&self) -> LiteralSet {
        LiteralSet::from_literals(
            self.universe(),
            self.rules().iter().flat_map(|r| r.literals()),
        )
        .expect("rule literals belong to the universe")
    }

    /// Every positive literal plus the negated literals the rules mention.
    pub fn atom_level_literals(&self) -> LiteralSet {
        let mut keep = self.mentioned_literals();
        for atom in 0..self.universe().atoms().len() {
            keep.insert_index(2 * atom);
        }
        keep
    }
}

impl PartialEq for OrderedProgram {
    fn eq(&self, other: &Self) -> bool {
        self.rules() == other.rules()
            && self.order.generating_pairs() == other.order.generating_pairs()
    }
}

impl Eq for OrderedProgram {}

pub fn literal_universe(p: &OrderedProgram) -> LiteralSet {
    p.literal_universe()
}
