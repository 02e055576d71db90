use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Both terms of a difference overflow and the difference cannot be
    /// formed in double precision.
    #[error("overflow: {0}")]
    Overflow(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    /// Fewer than `n + 1` distinct roots survived refinement and deduplication.
    #[error("incomplete root set for n = {n}: found {found} of {expected} roots")]
    IncompleteRootSet { n: u32, found: usize, expected: usize },

    /// Root counts by kind disagree with the counting theorems.
    #[error(
        "classification mismatch for n = {n}: positive={positive}, negative={negative}, nonreal={nonreal}"
    )]
    ClassificationMismatch {
        n: u32,
        positive: usize,
        negative: usize,
        nonreal: usize,
    },

    #[error("region mapping violated at z = {z} ({rule})")]
    MappingViolation { z: Complex64, rule: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
