use thiserror::Error;

use crate::mvt::MeanValueResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("evaluation budget exceeded: {requested} points requested, cap is {cap}")]
    Effort { requested: u128, cap: u64 },

    #[error("non-finite integrand value {value} at {point:?}")]
    Evaluation { point: Vec<f64>, value: f64 },

    #[error("constraint function is negative (g = {value}) at {point:?}")]
    NegativeConstraint { point: Vec<f64>, value: f64 },

    #[error("sublevel set is unbounded: minimum of g on the unit sphere is {sphere_min}")]
    UnboundedSublevel { sphere_min: f64 },

    #[error("box enlargement did not converge after {doublings} doublings (last radius {radius}); the integral may diverge")]
    NoConvergence { doublings: u32, radius: f64 },

    #[error(
        "bracket [{lo}, {hi}] with values [{phi_lo}, {phi_hi}] does not straddle target {target}"
    )]
    Bracket {
        lo: f64,
        hi: f64,
        phi_lo: f64,
        phi_hi: f64,
        target: f64,
    },

    #[error("dual map is not monotone beyond the noise floor at lambda = {lambda}")]
    EvaluationNoise { lambda: f64 },

    #[error("mean-value point extraction failed after {attempts} attempts (best residual {})", best.residual)]
    ExtractionFailure {
        attempts: usize,
        best: Box<MeanValueResult>,
    },
}

impl Error {
    /// True for errors caused by the caller's input rather than by a
    /// numerical engine.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Input(_) | Error::DimensionMismatch { .. } | Error::Usage(_)
        )
    }
}
