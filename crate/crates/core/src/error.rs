use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("synchronization error: {0}")]
    Synchronization(String),

    /// The undamped tank is driven exactly at its natural frequency.
    #[error("singular resonance: {0}")]
    SingularResonance(String),

    /// A closed-form expression hit a pole (division by zero).
    #[error("singularity: {0}")]
    Singularity(String),

    #[error("cannot estimate: {0}")]
    CannotEstimate(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Short category label, stable across releases; used for exit codes and logs.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Config(_) => "config",
            Error::Range(_) => "range",
            Error::Synchronization(_) => "synchronization",
            Error::SingularResonance(_) => "singular-resonance",
            Error::Singularity(_) => "singularity",
            Error::CannotEstimate(_) => "cannot-estimate",
        }
    }
}

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::invalid(format!("{name} must be finite, got {value}")))
    }
}
