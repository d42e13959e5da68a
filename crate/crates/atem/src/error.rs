use thiserror::Error;

/// Unified error type for the toolkit.
///
/// `Config` covers everything a user can fix by editing inputs (bad files,
/// inconsistent parameters, out-of-range requests); `Numerical` covers
/// overflow / non-finite intermediates and quantities outside the reliable
/// band of the numerics. The CLI maps them to distinct exit codes.
#[derive(Debug, Error)]
pub enum AtemError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("numerical range error: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(String),
}

impl AtemError {
    pub fn config(msg: impl Into<String>) -> Self {
        AtemError::Config(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        AtemError::Numerical(msg.into())
    }

    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            AtemError::Config(_) => 2,
            AtemError::Numerical(_) => 3,
            AtemError::Io(_) | AtemError::Serde(_) => 1,
        }
    }
}

impl From<serde_json::Error> for AtemError {
    fn from(e: serde_json::Error) -> Self {
        AtemError::Serde(e.to_string())
    }
}

impl From<toml::de::Error> for AtemError {
    fn from(e: toml::de::Error) -> Self {
        AtemError::Serde(e.to_string())
    }
}

impl From<csv::Error> for AtemError {
    fn from(e: csv::Error) -> Self {
        AtemError::Serde(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, AtemError>;
