use thiserror::Error;

/// Errors raised by the symbolic and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error in {input:?}: unexpected {found:?} at position {position}")]
    Parse {
        input: String,
        position: usize,
        found: char,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("word {0} is not in H^1 (it does not start with y)")]
    NotInH1(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("divergent series: {0}")]
    Divergent(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("element is not in ker psi: {0}")]
    NotInKernel(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
