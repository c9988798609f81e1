//! Torsion values: fractions of Laurent polynomials modulo `+-t^k`.

use std::fmt;

use crate::algebra::{Complex, LaurentPolynomial, Precision, Rational, Scalar};

/// `numerator / denominator`, compared up to multiplication by `+-t^k`.
/// A zero numerator encodes the vanishing torsion of a non-acyclic complex.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionValue<T: Scalar> {
    pub numerator: LaurentPolynomial<T>,
    pub denominator: LaurentPolynomial<T>,
}

impl<T: Scalar> TorsionValue<T> {
    /// Fails with `None` on a zero denominator.
    pub fn new(numerator: LaurentPolynomial<T>, denominator: LaurentPolynomial<T>) -> Option<Self> {
        (!denominator.is_zero()).then_some(TorsionValue { numerator, denominator })
    }

    pub fn zero(ctx: &T::Context) -> Self {
        TorsionValue { numerator: LaurentPolynomial::zero(), denominator: LaurentPolynomial::one(ctx) }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn inverse(&self) -> Option<Self> {
        TorsionValue::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        TorsionValue {
            numerator: &self.numerator * &other.numerator,
            denominator: &self.denominator * &other.denominator,
        }
    }

    /// Coefficientwise relative distance between the cross products
    /// `N1 D2` and `N2 D1` after aligning degrees and choosing the better
    /// sign; infinite when the spans differ.
    pub fn distance_up_to_units(&self, other: &Self) -> f64 {
        let p = &self.numerator * &other.denominator;
        let q = &other.numerator * &self.denominator;
        match (p.low_degree(), q.low_degree()) {
            (None, None) => return 0.0,
            (None, _) | (_, None) => return f64::INFINITY,
            _ => {}
        }
        if p.span() != q.span() {
            return f64::INFINITY;
        }
        let q = q.shift(p.low_degree().unwrap() - q.low_degree().unwrap());
        let scale = p.max_log2_abs().max(q.max_log2_abs());
        let plus = (&p - &q).max_log2_abs();
        let minus = (&p + &q).max_log2_abs();
        (plus.min(minus) - scale).exp2()
    }

    pub fn equals_up_to_units(&self, other: &Self, tolerance: f64) -> bool {
        let d = self.distance_up_to_units(other);
        if T::EXACT {
            d == 0.0
        } else {
            d < tolerance
        }
    }
}

impl TorsionValue<Rational> {
    pub fn to_complex(&self, prec: Precision) -> TorsionValue<Complex> {
        TorsionValue { numerator: self.numerator.to_complex(prec), denominator: self.denominator.to_complex(prec) }
    }
}

impl<T: Scalar> fmt::Display for TorsionValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.span() == Some(0) && self.denominator.low_degree() == Some(0) && T::EXACT {
            // Exact constants print as a plain fraction.
            if let (Some(n), Some(d)) = (self.numerator.coeff(0), self.denominator.coeff(0)) {
                if self.numerator.len() == 1 {
                    return write!(f, "{}", n.checked_div(d).map_err(|_| fmt::Error)?);
                }
            }
        }
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}
