use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial is numerically zero")]
    ZeroPolynomial,
    #[error("root clustering is ambiguous: {0}")]
    IllConditioned(String),
    #[error("interpolation system is numerically singular (pivot ratio {0:e})")]
    SingularSystem(f64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("bisection bracket does not change sign on ({lo}, {hi})")]
    BracketFailure { lo: f64, hi: f64 },
    #[error("polynomial is not even: |f(t) - f(-t)| = {0:e}")]
    NotEven(f64),
    #[error("roots cannot be matched into reciprocal pairs: {0}")]
    PairingFailure(String),
    #[error("no root found on {0}")]
    NoRoot(String),
    #[error("spread {spread} too large: adjacent-cluster arc {arc} is not below {threshold}")]
    SpreadTooLarge { spread: f64, arc: f64, threshold: f64 },
    #[error("{subsets} subsets exceed the enumeration cap {cap}")]
    CombinatorialExplosion { subsets: u128, cap: u128 },
    #[error("linear program solver failure: {0}")]
    SolverFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
