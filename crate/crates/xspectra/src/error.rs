//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Series too short for spectral analysis (need at least two positive
    /// Fourier frequencies, i.e. length >= 4).
    #[error("invalid series length: {0}")]
    InvalidLength(String),

    /// Paired inputs disagree in length.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A parameter is outside its admissible range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The cumulative co-spectrum ratio is not positive, so the averaged
    /// periodogram estimate is undefined for this sample.
    #[error("non-positive cumulative spectrum: {0}")]
    NonPositiveSpectrum(String),

    /// Input degenerate for the requested estimator (e.g. zero cumulative
    /// spectrum at the outer cutoff).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A logarithm of zero would be required.
    #[error("log of zero: {0}")]
    LogOfZero(String),

    /// Too few points for the requested fit.
    #[error("insufficient points: {0}")]
    InsufficientPoints(String),

    /// Moments of an empty sample were requested.
    #[error("empty sample")]
    EmptySample,

    /// No asymptotic reference variance is available for this estimator.
    #[error("no asymptotic reference for {0}")]
    NoReference(&'static str),

    /// A study grid failed validation.
    #[error("invalid study configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// True for failures that can occur on a legitimate random sample
    /// (as opposed to misconfiguration); the study harness counts these
    /// per cell instead of aborting.
    pub fn is_sample_failure(&self) -> bool {
        matches!(
            self,
            Error::NonPositiveSpectrum(_) | Error::DegenerateInput(_) | Error::LogOfZero(_)
        )
    }
}
