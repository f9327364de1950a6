use thiserror::Error;

/// Errors raised by the library.
///
/// `Consistency` is reserved for disagreements between two independent
/// computational routes. It signals an implementation defect, never bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("classes live in different ring models")]
    ModelMismatch,

    #[error("internal consistency failure in {check}: {left} != {right}")]
    Consistency {
        check: String,
        left: String,
        right: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn consistency(
        check: impl Into<String>,
        left: impl std::fmt::Display,
        right: impl std::fmt::Display,
    ) -> Self {
        Error::Consistency {
            check: check.into(),
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
