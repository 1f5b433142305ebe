use thiserror::Error;

/// Errors produced by the library. Verdict-style outcomes (violations,
/// failed experiments) are reported through [`crate::report::Report`], not here.
#[derive(Debug, Error)]
pub enum DboError {
    #[error("dimension mismatch: expected d = {expected}, found d = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid exponent {0}: exponents must lie in [1, inf]")]
    InvalidExponent(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),

    #[error("torus grid too small: need n >= {required}, got n = {actual}")]
    GridTooSmall { required: usize, actual: usize },

    #[error("outside the supported scope: {0}")]
    OutOfScope(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, DboError>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(DboError::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}
