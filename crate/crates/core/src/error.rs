use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Fewer than two members, so no pair distance exists.
    #[error("family has {members} member(s); at least two are needed to define a common distance")]
    Underdetermined { members: usize },

    #[error("family is not equidistant: {0}")]
    NotEquidistant(Box<crate::family::EquidistanceFailure>),

    #[error("unsupported alphabet size q = {q} (this operation requires q = 2)")]
    UnsupportedAlphabet { q: u16 },

    #[error("out of regime: {0}")]
    OutOfRegime(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An internal consistency check failed; indicates a bug, never bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
