use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {value} outside supported range [{min}, {max}] for {what}")]
    Range {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("non-finite value in {what} at x = {at}")]
    NonFinite { what: &'static str, at: f64 },
    #[error("no convergence in {what}: estimated error {estimate:e} exceeds {tolerance:e}")]
    Convergence {
        what: &'static str,
        estimate: f64,
        tolerance: f64,
    },
    #[error("inconsistent results in {what}: discrepancy {discrepancy:e} exceeds {tolerance:e}")]
    Inconsistent {
        what: &'static str,
        discrepancy: f64,
        tolerance: f64,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(what: &'static str, at: f64, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what, at })
    }
}
