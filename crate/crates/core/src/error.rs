use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("algebra is infinite dimensional or exceeds the bound of {bound} basis paths")]
    InfiniteDimensional { bound: usize },

    #[error("vertex {vertex} out of range for a quiver with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("relation {relation} does not act as zero")]
    RelationViolated { relation: String },

    #[error("map does not commute with the action of arrow {arrow}")]
    NotIntertwining { arrow: String },

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("isomorphism search exhausted its budget without a witness")]
    InconclusiveIsomorphism,

    #[error("decomposition search exhausted its budget (End dimension {end_dim})")]
    InconclusiveDecomposition { end_dim: usize },

    #[error("ext class does not belong to the given modules")]
    ForeignExtClass,

    #[error("{0}")]
    Parse(#[from] ParseError),
}

impl Error {
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::InconclusiveIsomorphism | Error::InconclusiveDecomposition { .. }
        )
    }
}

/// A syntax or evaluation error with a 1-based source position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
