//! Bias-corrected median absolute deviation built on the sample median,
//! the Harrell-Davis median and the trimmed Harrell-Davis median.

#![allow(clippy::excessive_precision)]

pub mod distributions;
pub mod error;
pub mod mad;
pub mod quantiles;
pub mod simulate;
pub mod specfun;
mod tables;

pub use distributions::{sample, DistributionSpec, RngStream};
pub use error::{Error, Result};
pub use mad::{
    asymptotic_factor, correction_factor, mad_corrected, mad_uncorrected, FactorModel, FactorTable,
    MadValue, ParkTail, PredictionCoefficients,
};
pub use quantiles::{median, quantile, MedianEstimatorKind, Sample, TrimWidth};
pub use specfun::{BetaParams, Probability};
