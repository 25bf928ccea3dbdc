use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown check id '{0}'")]
    UnknownCheck(String),
    #[error("no checks selected")]
    EmptySelection,
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] grassvol::Error),
    #[error("serialisation failed: {0}")]
    Serialise(String),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
