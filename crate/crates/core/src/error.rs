use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operator is not Hermitian (max |A - A^dag| = {max_asymmetry:.3e})")]
    NonHermitian { max_asymmetry: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension {dim} exceeds the limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },

    #[error("step size underflow; last accepted time t = {t}")]
    StepUnderflow { t: f64 },

    #[error("negative decay rate {rate} for level {level}")]
    NegativeRate { level: usize, rate: f64 },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("unknown level label '{0}'")]
    UnknownLabel(String),

    #[error("invalid angular momentum arguments: {0}")]
    InvalidSpin(String),

    #[error("channel {index} has zero energy defect (Forster degenerate, second order invalid)")]
    ForsterDegenerate { index: usize },

    #[error("no root found in [{lo}, {hi}] for branch k = {k}")]
    NoRoot { lo: f64, hi: f64, k: i32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
