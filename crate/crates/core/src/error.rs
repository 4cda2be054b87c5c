use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two keys compared equal; every input must consist of distinct keys.
    #[error("duplicate key encountered")]
    DuplicateKey,

    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration engine was asked for a size beyond its cap.
    #[error("{engine}: size {requested} exceeds cap {cap}")]
    CapExceeded {
        engine: &'static str,
        requested: usize,
        cap: usize,
    },

    /// No closed form exists for the requested quantity.
    #[error("no closed form: {0}")]
    NoClosedForm(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
