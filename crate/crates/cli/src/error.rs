use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("[{section}]: {message}")]
    Semantic { section: String, message: String },

    #[error("usage: {0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] homlts_core::Error),
}

impl CliError {
    pub fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        CliError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    pub fn semantic(section: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Semantic {
            section: section.into(),
            message: message.into(),
        }
    }

    /// 2 for input problems, 3 for size caps, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. }
            | CliError::Semantic { .. }
            | CliError::Usage(_)
            | CliError::Io { .. } => 2,
            CliError::Core(homlts_core::Error::SizeCap { .. }) => 3,
            CliError::Core(_) => 1,
        }
    }
}
