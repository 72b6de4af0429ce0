use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("cannot read {path}: {source}", path = path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("{context}: malformed JSON: {source}")]
    Json {
        context: String,
        source: serde_json::Error,
    },
    #[error("{context}: {source}")]
    Invalid {
        context: String,
        source: eur_core::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}", path = path.display())]
    Write { path: PathBuf, source: io::Error },
}

impl ToolError {
    pub fn invalid(context: impl Into<String>, source: eur_core::Error) -> Self {
        ToolError::Invalid {
            context: context.into(),
            source,
        }
    }

    /// 2 for anything wrong with the inputs, 1 for output failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            ToolError::Write { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, ToolError>;
