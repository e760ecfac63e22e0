use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree must be at least 2, got {0}")]
    InvalidDegree(u32),
    #[error("lambda must be a nonzero finite complex number")]
    ZeroLambda,
    #[error("kappa must lie in (0, 1), got {0}")]
    InvalidKappa(f64),
    #[error("budget must be at least {min}, got {got}")]
    InvalidBudget { min: usize, got: usize },
    #[error("derivative undefined: z is a pole (z^n = lambda)")]
    Pole,
    #[error("cannot parse complex number {0:?}")]
    ParseComplex(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
