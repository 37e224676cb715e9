use thiserror::Error;

/// Errors raised by the library.
///
/// Outcomes such as a failed oracle comparison or a vanished descent step
/// are reported through result structs, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {what} = {requested} exceeds the limit {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
