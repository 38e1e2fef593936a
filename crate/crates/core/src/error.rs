use thiserror::Error;

/// Errors raised by grid construction, operator assembly and quadrature.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {x} lies outside [-{a}, {a}]")]
    OutOfDomain { x: f64, a: f64 },

    #[error("basis index {k} outside 0..={m}")]
    IndexOutOfRange { k: usize, m: usize },

    #[error("degree must be at least {min}, got {m}")]
    InvalidDegree { m: usize, min: usize },

    #[error("half-width must be positive and finite, got {0}")]
    InvalidHalfWidth(f64),

    #[error("iteration parameter must be at least 1")]
    InvalidIteration,

    #[error("frequency must be finite and non-negative, got {0}")]
    InvalidFrequency(f64),

    #[error("expected {expected} samples, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("sample {index} is not finite ({value})")]
    NonFiniteSample { index: usize, value: f64 },

    #[error("Gauss rule size {0} outside 1..=1024")]
    InvalidRuleSize(usize),

    #[error("Newton iteration for Legendre root {index} of degree {n} did not converge")]
    NewtonDivergence { n: usize, index: usize },

    #[error("invalid reference configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("reference integral did not reach {target:e} (last difference {achieved:e})")]
    NotConverged { target: f64, achieved: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
