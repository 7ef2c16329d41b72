use std::io;

/// Errors produced anywhere in the preprocessing, simulation and reporting pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix has no entries")]
    EmptyMatrix,
    #[error("matrix is all zero; amplitude encoding is undefined")]
    AllZeroMatrix,
    #[error("matrix has a single entry; at least two amplitudes (k >= 1) are required")]
    SingleEntry,
    #[error("non-finite matrix entry at flat index {0}")]
    NonFinite(usize),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("angle {0} outside the representable magnitude range")]
    AngleOutOfRange(f64),
    #[error("precision t = {0} outside the supported range 2..=62")]
    PrecisionOutOfRange(u32),
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("all weights are zero")]
    AllZeroWeights,
    #[error("matrix has a nonzero imaginary part at flat index {0}")]
    NotRealMatrix(usize),
    #[error("{what}: expected length {expected}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("register layout mismatch: {0}")]
    WidthMismatch(String),
    #[error("operation not available in {0} mode")]
    WrongMode(&'static str),
    #[error("work registers are not clean")]
    DirtyWorkRegisters,
    #[error("state is not a clean leaf state (work registers zero, v = 1)")]
    DirtyState,
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error("check failed: {0}")]
    AssertionFailure(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
