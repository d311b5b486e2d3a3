//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Invalid(String),

    #[error("node buffer holds {actual} values, grid needs {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("fields live on different grids (dim {left_dim}, K = {left_degree} vs dim {right_dim}, K = {right_degree})")]
    GridMismatch {
        left_dim: usize,
        left_degree: usize,
        right_dim: usize,
        right_degree: usize,
    },

    #[error("symbol produced a non-finite multiplier at mode {mode:?} (|j| = {omega})")]
    NonFiniteSymbol { mode: Vec<i64>, omega: f64 },

    #[error("step-size restriction violated: d·τ·K² = {ratio:.6} exceeds c = {limit:.6}")]
    CflExceeded { ratio: f64, limit: f64 },

    #[error("numerical blow-up: non-finite values after step {step} (t = {time:.6e})")]
    NumericBlowup { step: usize, time: f64 },

    #[error("recovery resolvent nearly singular at mode {mode:?}: |e^(iτ|j|²) − 1 + iτ| = {denominator:.3e} below {threshold:.3e}")]
    SingularRecovery {
        mode: Vec<i64>,
        denominator: f64,
        threshold: f64,
    },

    #[error("states are at different times: {left:.12e} vs {right:.12e}")]
    TimeMismatch { left: f64, right: f64 },

    #[error("writing {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
