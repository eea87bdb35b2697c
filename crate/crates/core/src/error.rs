use rustfft::num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HalfLapError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The hypergeometric series hit its term budget before the stopping rule fired.
    #[error("series did not converge after {terms} terms (partial sum {partial_sum})")]
    NoConvergence { terms: usize, partial_sum: Complex64 },

    #[error("non-finite function value {value} at node {node} (x = {x})")]
    Evaluation { node: usize, x: f64, value: f64 },

    #[error("boundary system is singular (condition estimate {condition:e})")]
    SingularSystem { condition: f64 },
}

pub type Result<T> = std::result::Result<T, HalfLapError>;

pub(crate) fn invalid(msg: impl Into<String>) -> HalfLapError {
    HalfLapError::InvalidArgument(msg.into())
}
