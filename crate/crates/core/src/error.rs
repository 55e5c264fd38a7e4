use thiserror::Error;

/// Errors produced by the scheduler, problem suite, trainer, and analysis code.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric input violated its precondition (NaN, infinite, negative, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The rolling window has not collected enough samples to produce a mean.
    #[error("window not ready: holds {have} of {need} samples")]
    WindowNotReady { have: usize, need: usize },

    /// A spec or configuration value is malformed.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Vector dimensions do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// The squared gradient norm fed to the Polyak rule was zero.
    #[error("degenerate gradient: squared norm is zero")]
    DegenerateGradient,

    /// A loss or gradient stopped being finite mid-run.
    #[error("diverged: {0}")]
    Diverged(String),

    /// An IDX file did not match the expected binary layout.
    #[error("idx format error: {0}")]
    IdxFormat(String),

    /// Paired dataset files disagree with each other.
    #[error("dataset inconsistency: {0}")]
    Inconsistent(String),

    /// A trace does not carry enough per-step data for verification.
    #[error("insufficient trace: {0}")]
    InsufficientTrace(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
