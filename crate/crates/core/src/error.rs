use thiserror::Error;

/// Errors raised by the exact engine. Mathematical verdicts (a symmetry
/// check failing, a polynomial not being an eigenfunction) are reported as
/// values, not as errors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("alpha must be greater than -1, got {0}")]
    BadAlpha(String),
    #[error("nu parameters must be nonzero (index {0})")]
    ZeroNu(usize),
    #[error("expected {expected} nu parameters for N = {n}, got {got}")]
    WrongNuCount { n: usize, expected: usize, got: usize },
    #[error("modulus constraints violated for the given nu parameters")]
    ConstraintViolated,
    #[error("parameter a must be nonzero")]
    ZeroA,
    #[error("2*Re(u) must be a nonnegative integer, got u = {0}")]
    InexactExponent(String),
    #[error("exponent mismatch: {0}")]
    ExponentMismatch(String),
    #[error("moment matrix is singular at degree {0}")]
    SingularMomentMatrix(usize),
    #[error("nullspace did not stabilize for order {order} within degree budget {budget}; trend {trend:?}")]
    NotStabilized {
        order: usize,
        budget: usize,
        trend: Vec<usize>,
    },
    #[error("exact certification of the modular nullspace failed: {0}")]
    NotCertified(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
