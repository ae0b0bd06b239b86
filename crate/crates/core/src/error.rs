use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
