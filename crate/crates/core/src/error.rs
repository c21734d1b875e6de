use thiserror::Error;

/// Errors produced by the algebra, loop and report layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A literal could not be parsed. `position` is the 1-based token index.
    #[error("parse error at token {position} ({token:?}): {reason}")]
    Parse {
        position: usize,
        token: String,
        reason: String,
    },
    #[error("cannot compile empty loop; use constant loop constructor")]
    EmptyLoop,
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter error: {0}")]
    Parameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
