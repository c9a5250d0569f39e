//! The worked example programs, as `.olp` text and parsed.

use crate::parser::parse_program;
use crate::syntax::OrderedProgram;

/// Two rules blocking each other, the first one preferred.
pub const MUTUAL_BLOCK: &str = "r1: a :- not b.\nr2: b :- not a.\nr2 < r1.\n";

/// The preferred rule is already defeated by the well-founded model.
pub const SETTLED_PREFERENCE: &str = "r1: a :- not b.\nr2: b :- not c.\nr2 < r1.\n";

/// Same-headed rules with different priorities.
pub const SAME_HEAD: &str = "r1: a.\nr2: b :- not a.\nr3: a :- not b.\nr3 < r2.\nr2 < r1.\n";

/// Two facts. The original declares `r2 < r3` over a program without `r3`;
/// read here as `r2 < r1`.
pub const TWO_FACTS: &str = "r1: p.\nr2: q.\nr2 < r1.\n";

/// Translation of a defeasible theory where a preferred defeasible rule
/// competes with a strict one.
pub const DEFEASIBLE: &str = "r1: p :- not -p.\nr2: q :- p.\nr3: -q :- not q.\nr2 < r3.\n";

/// `{a, -a, b}` as facts.
pub const CONTRADICTORY_FACTS: &str = "r1: a.\nr2: -a.\nr3: b.\n";

fn parse(text: &str) -> OrderedProgram {
    parse_program(text).expect("fixture programs are valid")
}

pub fn mutual_block() -> OrderedProgram {
    parse(MUTUAL_BLOCK)
}

pub fn settled_preference() -> OrderedProgram {
    parse(SETTLED_PREFERENCE)
}

pub fn same_head() -> OrderedProgram {
    parse(SAME_HEAD)
}

pub fn two_facts() -> OrderedProgram {
    parse(TWO_FACTS)
}

pub fn defeasible() -> OrderedProgram {
    parse(DEFEASIBLE)
}

pub fn contradictory_facts() -> OrderedProgram {
    parse(CONTRADICTORY_FACTS)
}
