use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, WorkbenchError>;

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    /// Config file could not be parsed or violates the schema.
    #[error("{}", schema_message(key, *line, message))]
    Schema { key: String, line: Option<usize>, message: String },

    /// Waveform CSV problems; `row` counts file lines from 1 (the header).
    #[error("row {row}: {message}")]
    Csv { row: usize, message: String },

    #[error("{0}")]
    Validation(String),

    #[error("{context}: {source}")]
    Core { context: String, source: hif_core::Error },
}

fn schema_message(key: &str, line: Option<usize>, message: &str) -> String {
    match (key.is_empty(), line) {
        (true, Some(l)) => format!("line {l}: {message}"),
        (true, None) => message.to_string(),
        (false, Some(l)) => format!("line {l}: `{key}`: {message}"),
        (false, None) => format!("`{key}`: {message}"),
    }
}

impl WorkbenchError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    pub fn core(context: impl Into<String>, source: hif_core::Error) -> Self {
        Self::Core { context: context.into(), source }
    }

    pub fn category(&self) -> &'static str {
        match self {
            Self::Io { .. } => "io",
            Self::Schema { .. } => "config",
            Self::Csv { .. } => "parse",
            Self::Validation(_) => "config",
            Self::Core { source, .. } => source.category(),
        }
    }

    /// Process exit code for the CLI. 2 is left to argument parsing.
    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "config" => 3,
            "parse" | "invalid-input" => 4,
            "io" => 5,
            "synchronization" => 6,
            _ => 7,
        }
    }
}
