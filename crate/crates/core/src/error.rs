use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: unknown vertex ids, bad parameters, unparsable files.
    #[error("input error: {0}")]
    Input(String),

    /// A lazy graph's neighbour oracle contradicted itself.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("oracle asymmetry: {0} lists {1} but {1} does not list {0}")]
    Asymmetric(VertexId, VertexId),

    /// A hypothesis of the requested construction does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The clique / separator structure the construction relies on is missing.
    #[error("structure error: {0}")]
    Structure(String),

    #[error("connectivity error: {0}")]
    Connectivity(String),

    /// Exact search gave up; callers may retry on a deeper window.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// Something that cannot happen if the theorems hold happened.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Short classification tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Integrity(_) | Error::Asymmetric(..) => "integrity",
            Error::Precondition(_) => "precondition",
            Error::Structure(_) => "structure",
            Error::Connectivity(_) => "connectivity",
            Error::SearchExhausted(_) => "search-exhausted",
            Error::Internal(_) => "internal",
        }
    }

    pub fn is_integrity(&self) -> bool {
        matches!(self, Error::Integrity(_) | Error::Asymmetric(..))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
