use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("element is not a unit")]
    NotUnit,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("budget exceeded for {what}: {required} elements required, cap is {cap}")]
    Budget {
        what: String,
        required: u128,
        cap: u128,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A computed result contradicts an expected mathematical property.
    #[error("discrepancy: {0}")]
    Discrepancy(String),
    #[error("computation failed: {0}")]
    Failed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_budget(what: &str, required: u128, cap: u64) -> Result<()> {
    if required > cap as u128 {
        Err(Error::Budget {
            what: what.to_string(),
            required,
            cap: cap as u128,
        })
    } else {
        Ok(())
    }
}
