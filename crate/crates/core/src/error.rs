use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("value {value} is outside the domain of {what}")]
    Domain { what: &'static str, value: f64 },

    #[error("sample contains a non-finite value at position {index}")]
    NonFinite { index: usize },

    #[error("sample is empty")]
    EmptySample,

    #[error("sample of size {n} is too small (need at least {min})")]
    SampleTooSmall { n: usize, min: usize },

    #[error("{scheme} is not defined for n = {n}")]
    OutOfRange { scheme: &'static str, n: usize },

    #[error("no tabulated factor for {estimator} at n = {n}")]
    FactorUnavailable { estimator: String, n: usize },

    #[error("invalid distribution spec: {0}")]
    InvalidSpec(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("not enough data: {0}")]
    InsufficientData(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
