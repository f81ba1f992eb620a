use thiserror::Error;

/// Errors raised by the numeric and symbolic routines.
///
/// Precision failures are always reported through [`Error::PrecisionExhausted`];
/// no routine returns a NaN in place of an answer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("divergent: {0}")]
    Divergent(String),

    #[error("precision exhausted in {routine}: {detail}")]
    PrecisionExhausted { routine: String, detail: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("registry error: {0}")]
    Registry(String),
}

impl Error {
    pub(crate) fn exhausted(routine: &str, detail: impl Into<String>) -> Self {
        Error::PrecisionExhausted { routine: routine.to_string(), detail: detail.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn is_precision_exhausted(&self) -> bool {
        matches!(self, Error::PrecisionExhausted { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
