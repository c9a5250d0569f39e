//! Semantics of ordered extended logic programs: answer sets, the
//! well-founded model, preferred answer sets, the preferred well-founded
//! model and a paraconsistent prioritized variant, all computed by direct
//! fixpoint iteration over a finite literal universe.
//!
//! ```
//! use olp_core::{parse_program, preferred_wf_model, DSetVariant};
//!
//! let op = parse_program("r1: a :- not b.\nr2: b :- not a.\nr2 < r1.").unwrap();
//! let model = preferred_wf_model(&op, DSetVariant::Full).unwrap().model;
//! assert_eq!(model.true_set().sorted_strings(), ["a"]);
//! assert!(model.false_set().sorted_strings().contains(&"b".to_string()));
//! ```

pub mod brewka;
pub mod classical;
pub mod error;
pub mod fixpoint;
pub mod fixtures;
pub mod harness;
pub mod parser;
pub mod preference;
pub mod pwfs;
pub mod syntax;

pub use brewka::{brewka_model, brewka_wf_set, c_star, cl, defeated_rules, t_star_step};
pub use classical::{
    a_op, answer_sets, c_op, cn, is_active, reduct, t_step, well_founded_model, WellFounded,
};
pub use error::{FixpointDivergence, ProgramError};
pub use fixpoint::FixpointTrace;
pub use parser::{parse_program, render_program, ParseError, ParseErrorKind, SourceSpan};
pub use preference::{ap_op, cp_op, lfp_ap, lfp_ap_model, preferred_answer_sets, tp_step};
pub use pwfs::{
    apn_op, cpn_op, d_set, d_set_simplistic, defeats, preferred_wf_model, preferred_wfs_set,
    tpn_step, DSetVariant, DefeatContext, PreferredWellFounded,
};
pub use syntax::{
    complement, literal_universe, validate_order, Atom, Interpretation, Literal, LiteralSet,
    OrderedProgram, PartialModel, PreferenceOrder, Program, Rule, RuleId, Universe,
};
