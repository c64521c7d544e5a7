use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad command line, parameter or spec string (exit status 2).
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Library(#[from] confmeasure::Error),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            // parameters the library rejects are usage errors too
            CliError::Library(
                confmeasure::Error::InvalidParameter(_)
                | confmeasure::Error::Divergent { .. }
                | confmeasure::Error::DegreeMismatch(..)
                | confmeasure::Error::Unsupported(_),
            ) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
