//! Error types shared across the crate.

use crate::numerics::space::Regime;

/// Crate-wide error type.
///
/// [`Error::InvalidArgument`] and [`Error::RegimeViolation`] are validation
/// failures (bad request); the remaining variants are numerical failures
/// detected while running an otherwise valid request.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("(p={p}, alpha={alpha}) violates the {regime:?} regime: requires {bound}")]
    RegimeViolation {
        p: String,
        alpha: f64,
        regime: Regime,
        bound: String,
    },

    #[error(
        "quadrature self-check failed: orders {order} and {order_doubled} disagree by {discrepancy:.3e} \
         (non-smooth integrand; raise the order or split the interval)"
    )]
    QuadratureSelfCheck {
        order: usize,
        order_doubled: usize,
        discrepancy: f64,
    },

    #[error("solver failed: {0}")]
    SolverFailure(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),
}

impl Error {
    /// True for request-validation failures (CLI exit code 1), false for
    /// numerical failures (exit code 2).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_) | Error::RegimeViolation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
