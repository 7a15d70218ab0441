use obstruct_core::Error as CoreError;

/// Failures of a command, each tied to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or inconsistent input; exit code 1.
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
    /// A check run by the command failed; exit code 1.
    #[error("{0}")]
    Failed(String),
    /// The request names a model the engine does not cover; exit code 2.
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn invalid(location: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Invalid {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Wraps an engine error found while handling `location`.
    pub fn core(location: impl Into<String>, e: CoreError) -> Self {
        match e {
            CoreError::Unsupported(m) => CliError::Unsupported(m),
            CoreError::Domain(m) => CliError::Unsupported(m),
            other => CliError::invalid(location, other.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Unsupported(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
