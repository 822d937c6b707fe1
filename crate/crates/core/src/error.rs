use std::fmt;

/// Everything that can go wrong while building or checking a partition.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Two quadratic irrationals from different fields `Q(sqrt(d))` met in one operation.
    #[error("cannot combine elements of Q(sqrt({0})) and Q(sqrt({1}))")]
    IncompatibleField(u64, u64),

    /// An exact irrational met an approximate float.
    #[error("exact and approximate scalars cannot be mixed")]
    MixedExactness,

    #[error("domain error: {0}")]
    Domain(String),

    /// The halfline passes through a lattice corner (rational slope).
    #[error("halfline crosses a lattice corner at x = {0}; use the periodic path")]
    DegenerateCrossing(String),

    /// The intercept recursion hit `y_k = 1 - alpha` exactly.
    #[error("intercept recursion is degenerate at k = {0} (y_k = 1 - alpha)")]
    RecursionDegenerate(i64),

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("face has zero area")]
    DegenerateFace,

    /// A verified theorem failed on a concrete instance. This indicates a bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("area formula mismatch: {0}")]
    FormulaMismatch(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Syntax error in a scalar expression, with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: {}",
            self.position, self.message
        )
    }
}

impl std::error::Error for ParseError {}

pub type Result<T, E = Error> = std::result::Result<T, E>;
