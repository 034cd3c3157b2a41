use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic must be prime (got {0})")]
    NotPrime(u64),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("invalid variable list: {0}")]
    InvalidVariables(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("frobenius level too large: {p}^{e} does not fit in 32 bits")]
    LevelTooLarge { p: u32, e: u32 },

    #[error("generator ceiling exceeded: {context} needs more than {ceiling} generators")]
    GeneratorCeiling { context: String, ceiling: usize },

    #[error("iteration ceiling exceeded: {0}")]
    IterationCeiling(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True when the error is a resource ceiling rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::GeneratorCeiling { .. } | Error::IterationCeiling(_) | Error::LevelTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
