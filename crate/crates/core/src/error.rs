use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation at a pole: q = {0}")]
    Pole(String),
    #[error("invalid reverse Hessenberg function: {0}")]
    InvalidHessenberg(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("q-expansion is not known to be symmetric for this poset; specialize q = 1 first")]
    NotSymmetric,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
