use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("quadrature did not reach tolerance: value {value:e}, error estimate {estimate:e}")]
    Quadrature { value: f64, estimate: f64 },
    #[error("envelope does not decay")]
    NoDecay,
    #[error("mode is not supercritical (kappa^2 = {kappa_sq:e}, threshold = {threshold:e})")]
    NotSupercritical { kappa_sq: f64, threshold: f64 },
    #[error("root not bracketed on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
    #[error("iteration limit reached in {0}")]
    NoConvergence(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
