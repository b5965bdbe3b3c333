use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cosine and sine coefficient lists differ in length ({cos} vs {sin})")]
    LengthMismatch { cos: usize, sin: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("grid of {got} points is below the required minimum of {min}")]
    InvalidGrid { got: usize, min: usize },

    #[error("series is not a member of the admissible family: {0}")]
    NotInF(String),

    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: f64 },

    #[error("first column of the matrix is numerically zero")]
    DegenerateColumn,

    #[error("f_inv is not strictly positive (value {value} at t = {t})")]
    NonPositiveF { t: f64, value: f64 },

    #[error("g(0) = {0} but the section requires g(0) = 0")]
    GNotAnchored(f64),

    #[error("loop spec did not pass validation")]
    InvalidSpec,

    #[error("monotone lift could not bracket the target angle {target}")]
    RootNotBracketed { target: f64 },

    #[error("cos t vanishes at t = {0}")]
    PoleAt(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
