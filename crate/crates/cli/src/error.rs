use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, malformed values, or a family/metric combination that has
    /// no meaning.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(qsd_core::Error),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            _ => ExitCode::from(1),
        }
    }
}

impl From<qsd_core::Error> for CliError {
    fn from(e: qsd_core::Error) -> Self {
        use qsd_core::Error as E;
        match e {
            E::InvalidArgument(_) | E::Unsupported { .. } | E::ModeOutOfRange { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Core(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
