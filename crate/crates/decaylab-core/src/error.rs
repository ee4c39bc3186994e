use thiserror::Error;

/// Errors produced by simulation, post-processing, and statistical tests.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The applied voltage is at or past continuous discharge; counts there
    /// are meaningless and the detector model refuses to produce them.
    #[error("applied voltage {applied_v} V is in the breakdown region (>= {breakdown_v} V)")]
    BreakdownRegion { applied_v: f64, breakdown_v: f64 },

    #[error("no plateau found in scan")]
    NoPlateau,

    #[error("empty bitstream")]
    EmptyBitstream,

    #[error("no counts")]
    NoCounts,

    #[error("non-binary value {value} at index {index}")]
    NonBinaryValue { value: u64, index: usize },

    #[error("window size {window} exceeds sequence length {n}")]
    WindowTooLarge { window: usize, n: usize },

    #[error("sequence too short for battery: {n} bits (minimum {min})")]
    SequenceTooShort { n: usize, min: usize },

    #[error("numerical domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
