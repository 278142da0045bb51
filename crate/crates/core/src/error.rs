use thiserror::Error;

/// Errors raised by the core library.
///
/// `Invalid` and `Hypothesis` describe bad input; `Internal` signals that an
/// identity the formulas guarantee (integrality, cross-route equality) was
/// violated, which can only mean a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid {field}: {message}")]
    Invalid { field: String, message: String },

    #[error("Harder-Narasimhan data required: {0}")]
    MissingHn(String),

    #[error("hypothesis not satisfied ({name}): {message}")]
    Hypothesis { name: String, message: String },

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn hypothesis(name: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Hypothesis {
            name: name.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by the caller's input rather than a defect.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
