//! Scalars, Laurent polynomials, matrices and determinants.

mod laurent;
mod matrix;
pub mod roots;
mod scalar;

pub use laurent::LaurentPolynomial;
pub use matrix::{det_laurent, kernel_and_image_bases, Matrix, RowEchelon};
pub use scalar::{Complex, Precision, Rational, Scalar, DEFAULT_PRECISION, MAX_PRECISION, MIN_PRECISION};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("interpolation is ill-conditioned at {precision} bits")]
    InterpolationIllConditioned { precision: u32 },
    #[error("precision {0} outside the supported range")]
    InvalidPrecision(u32),
    #[error("exponent overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

impl AlgebraError {
    /// Stable variant name for machine-readable reports.
    pub fn name(&self) -> &'static str {
        match self {
            AlgebraError::DivisionByZero => "DivisionByZero",
            AlgebraError::NonSquare { .. } => "NonSquare",
            AlgebraError::DimensionMismatch(_) => "DimensionMismatch",
            AlgebraError::InterpolationIllConditioned { .. } => "InterpolationIllConditioned",
            AlgebraError::InvalidPrecision(_) => "InvalidPrecision",
            AlgebraError::Overflow => "Overflow",
            AlgebraError::Parse(_) => "ParseError",
        }
    }
}
