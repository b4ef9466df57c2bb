use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("unknown feature `{0}`")]
    UnknownFeature(String),

    /// The call is well-formed but not applicable to the given data
    /// (e.g. a nominal-only measure on a linear feature).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("refusing exhaustive search over {variables} variables (cap {cap}): about {subsets} subsets x {configurations} configurations; pass force to override")]
    TooExpensive {
        variables: usize,
        cap: usize,
        subsets: u128,
        configurations: u128,
    },

    #[error("invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
