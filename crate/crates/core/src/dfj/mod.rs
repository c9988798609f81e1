//! Torsion polynomial functions: symmetric normalization, leading
//! coefficients, genus bounds and fiberedness evidence.

mod pipeline;
mod polynomial;

pub use pipeline::{torsion_polynomial_at, PipelineConfig, PipelineOutput};
pub use polynomial::{
    fiberedness_evidence, genus_lower_bound, leading_coefficient, normalize, FiberednessReport, NormalizeTolerance,
    TorsionPolynomial,
};

use crate::reps::RepsError;
use crate::torsion::TorsionError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DfjError {
    #[error("odd span {span}: no symmetric representative")]
    OddSpan { span: i64 },
    #[error("symmetry violated (relative residual {residual:e})")]
    AsymmetricResult { residual: f64 },
    #[error("denominator does not divide numerator (relative remainder {remainder:e})")]
    InexactDivision { remainder: f64 },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("no nonzero samples")]
    NoSamples,
    #[error("genus must be positive")]
    InvalidGenus,
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error(transparent)]
    Reps(#[from] RepsError),
}

impl DfjError {
    pub fn name(&self) -> &'static str {
        match self {
            DfjError::OddSpan { .. } => "OddSpan",
            DfjError::AsymmetricResult { .. } => "AsymmetricResult",
            DfjError::InexactDivision { .. } => "InexactDivision",
            DfjError::ZeroPolynomial => "ZeroPolynomial",
            DfjError::NoSamples => "NoSamples",
            DfjError::InvalidGenus => "InvalidGenus",
            DfjError::Torsion(e) => e.name(),
            DfjError::Reps(e) => e.name(),
        }
    }
}
