use thiserror::Error;

use crate::sdp::{FeasibilityReport, SdpSolution};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    Validation(String),

    #[error("brute force needs {required} assignments, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("sdp solution is missing the vector for {0}")]
    MissingVector(String),

    #[error("sdp solver did not converge after {iterations} iterations (max residual {residual:.3e})")]
    NotConverged { iterations: usize, residual: f64, best: Box<(SdpSolution, FeasibilityReport)> },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
