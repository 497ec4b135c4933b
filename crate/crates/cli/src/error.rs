use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed state document: {0}")]
    Malformed(String),
    #[error(transparent)]
    State(#[from] sepfid_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Every error the CLI reports is a validation failure.
    pub fn exit_code(&self) -> u8 {
        1
    }
}
