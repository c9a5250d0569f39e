use thiserror::Error;

/// Errors raised while assembling a program from its parts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("`{0}` is not a valid identifier")]
    InvalidIdentifier(String),
    #[error("duplicate rule name `{0}`")]
    DuplicateName(String),
    #[error("cyclic preference through rule `{rule}`")]
    CyclicOrder { rule: String },
    #[error("preference mentions unknown rule `{name}`")]
    UnknownRule { name: String },
    #[error("literal `{0}` is outside the program's universe")]
    UnknownLiteral(String),
    #[error("{heads} distinct heads exceed the enumeration limit of {limit}")]
    TooManyCandidates { heads: usize, limit: usize },
}

/// A fixpoint iteration exceeded its convergence cap.
///
/// Every iteration in this crate runs over a monotone operator on a finite
/// lattice, so hitting the cap means an operator is not behaving as its
/// theory says it should.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{operator} did not converge within {cap} applications")]
pub struct FixpointDivergence {
    pub operator: &'static str,
    pub cap: usize,
}
