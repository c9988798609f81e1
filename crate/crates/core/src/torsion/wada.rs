//! Twisted Alexander polynomials from Fox calculus.

use crate::algebra::{LaurentPolynomial, Matrix, Scalar};
use crate::knots::{GroupPresentation, Word};
use crate::reps::LinearRep;

use super::group_ring::{fox_jacobian, GroupRingElement};
use super::{TorsionError, TorsionValue};

pub(crate) fn require_deficiency_one(p: &GroupPresentation) -> Result<(), TorsionError> {
    if p.deficiency() != 1 {
        return Err(TorsionError::NotDeficiencyOne {
            generators: p.generator_count(),
            relators: p.relators().len(),
        });
    }
    Ok(())
}

/// Fox Jacobian pushed through `alpha (x) rho`: block `(i, j)` is the image
/// of `d r_i / d x_j`.
pub fn twisted_jacobian<T: Scalar>(
    presentation: &GroupPresentation,
    rep: &LinearRep<T>,
) -> Matrix<LaurentPolynomial<T>> {
    let blocks: Vec<Vec<_>> = fox_jacobian(presentation)
        .iter()
        .map(|row| row.iter().map(|e| e.twisted_image(presentation, rep)).collect())
        .collect();
    if blocks.is_empty() {
        return Matrix::from_fn(0, presentation.generator_count() * rep.dim(), |_, _| LaurentPolynomial::zero());
    }
    Matrix::from_blocks(&blocks).expect("uniform block sizes")
}

/// `(alpha (x) rho)(x_j) - I`.
pub fn generator_block<T: Scalar>(
    presentation: &GroupPresentation,
    rep: &LinearRep<T>,
    j: usize,
) -> Matrix<LaurentPolynomial<T>> {
    let x = GroupRingElement::from_word(Word::generator(j));
    (&x - &GroupRingElement::one()).twisted_image(presentation, rep)
}

/// Wada invariant `det A_j / det((alpha (x) rho)(x_j) - I)`, where `A_j` is
/// the twisted Jacobian with block column `j` deleted.
///
/// With `column = None` the generators are tried in order and the first
/// with a nonvanishing denominator is used. A vanishing numerator yields the
/// zero value.
pub fn wada_invariant<T: Scalar>(
    presentation: &GroupPresentation,
    rep: &LinearRep<T>,
    column: Option<usize>,
) -> Result<TorsionValue<T>, TorsionError> {
    require_deficiency_one(presentation)?;
    let n = presentation.generator_count();
    let d = rep.dim();
    let ctx = rep.context();
    let candidates: Vec<usize> = match column {
        Some(j) if j < n => vec![j],
        Some(j) => return Err(TorsionError::DenominatorVanishes { column: j }),
        None => (0..n).collect(),
    };
    let jac = twisted_jacobian(presentation, rep);
    for &j in &candidates {
        let denominator = generator_block(presentation, rep, j).det_laurent(None, ctx)?;
        if denominator.is_zero() {
            continue;
        }
        let keep: Vec<usize> = (0..n * d).filter(|c| c / d != j).collect();
        let numerator = jac.select_columns(&keep).det_laurent(None, ctx)?;
        return Ok(TorsionValue { numerator, denominator });
    }
    Err(match column {
        Some(j) => TorsionError::DenominatorVanishes { column: j },
        None => TorsionError::AllColumnsVanish,
    })
}
