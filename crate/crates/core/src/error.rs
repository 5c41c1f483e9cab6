use thiserror::Error;

/// Errors raised by the library. Every variant is a caller-side usage or
/// validity problem; nothing here is recoverable by retrying.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("d must be prime, got {0}")]
    NotPrime(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{what} out of range: {value} (allowed 0..={max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("amplitudes are not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("too few trials for a chi-square test: {trials} < {required}")]
    TooFewTrials { trials: u64, required: u64 },

    #[error("no embedded chi-square critical value for {0} degrees of freedom")]
    NoCriticalValue(usize),

    #[error("trials must be at least 1")]
    NoTrials,
}

pub type Result<T> = std::result::Result<T, Error>;
