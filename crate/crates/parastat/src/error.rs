use crate::radical::RadicalError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed pattern: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("reduced matrix element table too shallow: {0}")]
    TableDepth(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error(transparent)]
    Radical(#[from] RadicalError),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
