use thiserror::Error;

/// Errors raised by the computation modules.
///
/// Each variant corresponds to a distinct failure class; the CLI maps them
/// onto exit statuses (see [`Error::exit_status`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    /// A monomial-matrix product left the monomial representation.
    #[error("representation overflow: {0}")]
    RepresentationOverflow(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The operation needs data (e.g. a Q-Cartier functional) that does not exist.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("non-standard boundary: {0}")]
    NonStandardBoundary(String),

    #[error("rewriting did not terminate within {cap} steps")]
    NonterminationSuspected { cap: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Exit status used by the command-line front end.
    pub fn exit_status(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) | Error::NonterminationSuspected { .. } => 4,
            Error::NotApplicable(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
