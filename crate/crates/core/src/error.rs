use crate::exactalg::Rational;

/// Errors raised by the exact and numeric layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at q = {at}")]
    Pole { at: Rational },

    #[error("coefficient {index} has a pole at q = {at}")]
    PoleInCoefficient { index: usize, at: Rational },

    #[error("series not converged after {terms} terms (best tail bound {bound:.3e})")]
    Truncation { terms: usize, bound: f64 },

    #[error("missing value for index {0}")]
    MissingIndex(usize),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
