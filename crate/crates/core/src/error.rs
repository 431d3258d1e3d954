use alloc::string::String;

/// Errors raised by the algebra and geometry routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("arity {0} is not supported by exact cell complexes (only 1 and 2)")]
    UnsupportedArity(usize),
    #[error("exponent not allowed in {context} context")]
    Context { context: &'static str },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("set is not admissible: {0}")]
    Inadmissible(String),
    #[error("degenerate binomial relation: no variable can be eliminated")]
    DegenerateRelation,
    #[error("not a valid chain: {0}")]
    InvalidChain(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
