use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Scalar payloads are widened to `f64` so the type stays independent of
/// the scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("evaluation budget of {budget} exhausted (error estimate {error_estimate:e})")]
    BudgetExceeded { budget: usize, error_estimate: f64 },

    #[error("round-off limits accuracy: best error estimate {error_estimate:e} exceeds tolerance {requested:e}")]
    RoundoffLimited { error_estimate: f64, requested: f64 },

    #[error("integrand is not finite at t = {at}")]
    NonFinite { at: f64 },

    #[error("no sign change on [{lo}, {hi}] (f = {f_lo:e}, {f_hi:e})")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root finder did not converge in {iterations} iterations (bracket width {width:e})")]
    NotConverged { iterations: usize, width: f64 },

    #[error("circles intersect or are tangent (|inversive product| = {product})")]
    NotDisjoint { product: f64 },

    #[error("numerically degenerate geometry: {0}")]
    Degenerate(String),

    #[error("circle passes through infinity and has no center/radius chart")]
    LineThroughInfinity,

    #[error("inconsistent constants: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
