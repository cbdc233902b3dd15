use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty set: {0}")]
    Empty(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("cone has nontrivial lineality")]
    NotPointed,
    #[error("no facet of the cone contains a nonzero generator")]
    NoFacet,
    #[error("functionals are linearly dependent")]
    DependentFunctionals,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl GeomError {
    /// Stable machine-readable code used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            GeomError::Parse(_) => "ParseError",
            GeomError::DimensionMismatch(_) => "DimensionMismatch",
            GeomError::Empty(_) => "EmptySet",
            GeomError::HypothesisViolated(_)
            | GeomError::NotPointed
            | GeomError::NoFacet
            | GeomError::DependentFunctionals => "HypothesisViolated",
            GeomError::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
