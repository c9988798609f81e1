//! Representation point to torsion polynomial, with precision escalation.

use crate::algebra::{AlgebraError, Precision, MAX_PRECISION};
use crate::knots::GroupPresentation;
use crate::reps::{polish, riley_candidate, LinearRep, RepresentationPoint, Variable};
use crate::torsion::{wada_invariant, TorsionError};

use super::{normalize, DfjError, NormalizeTolerance, TorsionPolynomial};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    pub tolerance: NormalizeTolerance,
    pub max_precision: u32,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { tolerance: NormalizeTolerance::default(), max_precision: MAX_PRECISION }
    }
}

/// Result of the pipeline at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineOutput {
    pub polynomial: TorsionPolynomial,
    /// Precision at which the accepted value was computed.
    pub precision: Precision,
}

fn retryable(e: &DfjError) -> bool {
    matches!(
        e,
        DfjError::InexactDivision { .. }
            | DfjError::AsymmetricResult { .. }
            | DfjError::OddSpan { .. }
            | DfjError::Torsion(TorsionError::Algebra(AlgebraError::InterpolationIllConditioned { .. }))
    )
}

/// The point at a new precision; Riley points are re-polished in `s` so
/// the extra bits are meaningful.
fn lift_point(point: &RepresentationPoint, prec: Precision, presentation: &GroupPresentation) -> Result<RepresentationPoint, DfjError> {
    match point.riley() {
        Some((s, u)) => {
            let (s, u) = (s.with_precision(prec), u.with_precision(prec));
            polish(&s, &u, Variable::S, presentation)
                .or_else(|_| polish(&s, &u, Variable::U, presentation))
                .or_else(|_| riley_candidate(&s, &u, presentation))
                .map_err(DfjError::Reps)
        }
        None => point.with_precision(prec, presentation).map_err(DfjError::Reps),
    }
}

fn evaluate(point: &RepresentationPoint, presentation: &GroupPresentation, genus: u32, config: &PipelineConfig) -> Result<TorsionPolynomial, DfjError> {
    let rep = LinearRep::from_point(point);
    let value = wada_invariant(presentation, &rep, None)?;
    normalize(&value, genus, &config.tolerance)
}

/// Wada invariant, normalization and leading coefficient at one point.
///
/// Ill-conditioned interpolation, inexact division, odd span or asymmetry
/// restart the computation at doubled precision. A zero polynomial or a
/// span below `4g - 2` is accepted only after a recomputation at doubled
/// precision agrees (or the precision ceiling is reached).
pub fn torsion_polynomial_at(
    presentation: &GroupPresentation,
    point: &RepresentationPoint,
    genus: u32,
    config: &PipelineConfig,
) -> Result<PipelineOutput, DfjError> {
    let ceiling = config.max_precision.min(MAX_PRECISION);
    let mut prec = point.precision();
    let mut current = point.clone();
    let mut pending: Option<TorsionPolynomial> = None;
    loop {
        let next = prec.escalate().filter(|p| p.bits() <= ceiling);
        match evaluate(&current, presentation, genus, config) {
            Ok(t) => {
                let degenerate = t.zero || t.span().unwrap_or(0) < t.full_span();
                let confirmed = match &pending {
                    Some(prev) => prev.zero == t.zero && prev.span() == t.span(),
                    None => !degenerate,
                };
                if confirmed || next.is_none() {
                    return Ok(PipelineOutput { polynomial: t, precision: prec });
                }
                pending = degenerate.then_some(t);
            }
            Err(e) if retryable(&e) && next.is_some() => pending = None,
            Err(e) => return Err(e),
        }
        prec = next.expect("checked above");
        current = lift_point(point, prec, presentation)?;
    }
}
