use thiserror::Error;

use crate::kernel::BigReal;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The computation ran but could not certify the requested accuracy.
    /// `best` carries the best available estimate with its (possibly large)
    /// error bound.
    #[error("accuracy error: {message}")]
    Accuracy { message: String, best: Box<BigReal> },

    #[error("conditioning error: {0}")]
    Conditioning(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    /// An exact computation contradicted a structural expectation.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn accuracy(message: impl Into<String>, best: BigReal) -> Self {
        Error::Accuracy { message: message.into(), best: Box::new(best) }
    }

    /// The best estimate carried by an accuracy error, if any.
    pub fn best_estimate(&self) -> Option<&BigReal> {
        match self {
            Error::Accuracy { best, .. } => Some(best),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
