use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input outside its physical domain; `field` names the offending input.
    #[error("{field}: {reason} (got {value})")]
    Domain {
        field: String,
        value: f64,
        reason: String,
    },

    #[error("out of regime: {0}")]
    OutOfRegime(String),

    /// Bose–Einstein occupation diverges (chemical potential at or above a mode energy).
    #[error("occupation pole: {0}")]
    Pole(String),

    #[error("unsupported source/target pairing: {0}")]
    UnsupportedPairing(String),

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("insufficient statistical precision: {0}")]
    Statistics(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("fit failed: {0}")]
    FitFailure(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(field: &str, value: f64, reason: &str) -> Self {
        Error::Domain {
            field: field.to_string(),
            value,
            reason: reason.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Fails with a domain error unless `value` is finite and strictly positive.
pub(crate) fn require_positive(field: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(field, value, "must be finite and > 0"))
    }
}
