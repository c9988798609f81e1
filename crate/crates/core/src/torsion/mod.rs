//! Fox calculus, Wada invariants and torsion of based chain complexes.

mod complex;
mod group_ring;
mod value;
mod wada;

pub use complex::{presentation_complex, BasedChainComplex, RawComplexFile, RawTorsion};
pub use group_ring::{fox_derivative, fox_jacobian, GroupRingElement};
pub use value::TorsionValue;
pub use wada::{generator_block, twisted_jacobian, wada_invariant};

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TorsionError {
    #[error("presentation must have deficiency one ({generators} generators, {relators} relators)")]
    NotDeficiencyOne { generators: usize, relators: usize },
    #[error("denominator vanishes for column {column}")]
    DenominatorVanishes { column: usize },
    #[error("every column has a vanishing denominator")]
    AllColumnsVanish,
    #[error("boundary maps do not compose to zero at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("homology basis mismatch: {0}")]
    HomologyBasisMismatch(String),
    #[error("complex is not acyclic")]
    NotAcyclic,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl TorsionError {
    pub fn name(&self) -> &'static str {
        match self {
            TorsionError::NotDeficiencyOne { .. } => "NotDeficiencyOne",
            TorsionError::DenominatorVanishes { .. } => "DenominatorVanishes",
            TorsionError::AllColumnsVanish => "AllColumnsVanish",
            TorsionError::NotAComplex { .. } => "NotAComplex",
            TorsionError::HomologyBasisMismatch(_) => "HomologyBasisMismatch",
            TorsionError::NotAcyclic => "NotAcyclic",
            TorsionError::Shape(_) => "ShapeError",
            TorsionError::Parse(_) => "ParseError",
            TorsionError::Algebra(e) => e.name(),
        }
    }
}
