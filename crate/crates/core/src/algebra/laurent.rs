//! Laurent polynomials in one indeterminate `t` over a [`Scalar`] field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Rational, Scalar};
use super::AlgebraError;

/// Sparse Laurent polynomial; no stored coefficient is an exact zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial<T> {
    coeffs: BTreeMap<i64, T>,
}

impl<T> Default for LaurentPolynomial<T> {
    fn default() -> Self {
        LaurentPolynomial { coeffs: BTreeMap::new() }
    }
}

impl<T: Scalar> LaurentPolynomial<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one(ctx: &T::Context) -> Self {
        Self::constant(T::one(ctx))
    }

    /// `c * t^k`.
    pub fn monomial(c: T, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPolynomial { coeffs }
    }

    /// Sums repeated exponents and drops exact zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        let mut coeffs: BTreeMap<i64, T> = BTreeMap::new();
        for (k, c) in terms {
            match coeffs.get_mut(&k) {
                Some(slot) => *slot += &c,
                None => {
                    coeffs.insert(k, c);
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPolynomial { coeffs }
    }

    /// Ascending coefficients starting at exponent `low`.
    pub fn from_dense(low: i64, dense: Vec<T>) -> Self {
        Self::from_terms(dense.into_iter().enumerate().map(|(i, c)| (low + i as i64, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn high_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `d_hi - d_lo`, `None` for the zero polynomial.
    pub fn span(&self) -> Option<i64> {
        Some(self.high_degree()? - self.low_degree()?)
    }

    pub fn coeff(&self, k: i64) -> Option<&T> {
        self.coeffs.get(&k)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.values().next_back()
    }

    pub fn trailing(&self) -> Option<&T> {
        self.coeffs.values().next()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &T)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn into_terms(self) -> impl Iterator<Item = (i64, T)> {
        self.coeffs.into_iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Context of the coefficients, if there are any.
    pub fn context(&self) -> Option<T::Context> {
        self.coeffs.values().next().map(|c| c.context())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// The substitution `t -> t^{-1}`.
    pub fn reflect(&self) -> Self {
        LaurentPolynomial { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, x)| (*k, x.clone() * c)))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LaurentPolynomial<U> {
        LaurentPolynomial::from_terms(self.coeffs.iter().map(|(k, c)| (*k, f(c))))
    }

    /// Drops every coefficient for which `negligible` holds.
    pub fn trimmed(mut self, negligible: impl Fn(&T) -> bool) -> Self {
        self.coeffs.retain(|_, c| !negligible(c));
        self
    }

    /// Largest `log2 |c|` over the coefficients (`-inf` for zero).
    pub fn max_log2_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.log2_abs()).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Evaluation at `t0` (which must be nonzero when negative exponents occur).
    pub fn eval(&self, t0: &T) -> Result<T, AlgebraError> {
        let ctx = t0.context();
        let (Some(lo), Some(hi)) = (self.low_degree(), self.high_degree()) else {
            return Ok(T::zero(&ctx));
        };
        // Horner on t^{-lo} p(t), then rescale.
        let mut acc = T::zero(&ctx);
        for k in (lo..=hi).rev() {
            acc = acc * t0;
            if let Some(c) = self.coeffs.get(&k) {
                acc += c;
            }
        }
        Ok(acc * &t0.pow_i64(lo)?)
    }

    /// Division with remainder after clearing negative exponents: returns
    /// `(q, r)` with `self = q * divisor + r` and `span(r) < span(divisor)`
    /// once both are shifted to start at `t^0`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        let (Some(dlo), Some(dhi)) = (divisor.low_degree(), divisor.high_degree()) else {
            return Err(AlgebraError::DivisionByZero);
        };
        let Some(nlo) = self.low_degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        let lead_inv = divisor.leading().expect("nonzero").inv()?;
        let mut rem = self.shift(-nlo);
        let d = divisor.shift(-dlo);
        let ddeg = dhi - dlo;
        let mut quotient = BTreeMap::new();
        while let Some(rdeg) = rem.high_degree() {
            if rdeg < ddeg {
                break;
            }
            let q = rem.coeffs[&rdeg].clone() * &lead_inv;
            let k = rdeg - ddeg;
            for (e, c) in d.terms() {
                let entry = rem.coeffs.entry(e + k).or_insert_with(|| T::zero(&c.context()));
                *entry -= &(q.clone() * c);
            }
            // The leading term cancels by construction; drop the rounding residue.
            rem.coeffs.remove(&rdeg);
            rem.coeffs.retain(|_, c| !c.is_zero());
            quotient.insert(k, q);
        }
        let q = LaurentPolynomial { coeffs: quotient }.shift(nlo - dlo);
        Ok((q, rem.shift(nlo)))
    }
}

impl LaurentPolynomial<Rational> {
    pub fn to_complex(&self, prec: super::Precision) -> LaurentPolynomial<super::Complex> {
        self.map(|c| c.to_complex(prec))
    }

    /// Parses strings such as `"1-2t+t^2"`, `"t^-1 - 3/2"`, `"2*t"`.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(AlgebraError::Parse("empty Laurent polynomial".into()));
        }
        let bad = || AlgebraError::Parse(format!("bad Laurent polynomial {text:?}"));
        // Split into signed terms, keeping '-' that belongs to an exponent.
        let mut terms: Vec<String> = Vec::new();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        terms.push(current);

        let mut out = Vec::new();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, exp) = match body.find('t') {
                None => (Rational::parse(body)?, 0),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() { Rational::from_integer(1) } else { Rational::parse(head)? };
                    let tail = &body[pos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            out.push((exp, if sign < 0 { -coef } else { coef }));
        }
        Ok(Self::from_terms(out))
    }
}

impl<T: Scalar> fmt::Display for LaurentPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if T::EXACT => (true, rest.to_string()),
                _ => (false, text),
            };
            if i > 0 {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let unit = T::EXACT && body == "1";
            match (*k, unit) {
                (0, _) => write!(f, "{body}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{body}t")?,
                (k, true) => write!(f, "t^{k}")?,
                (k, false) => write!(f, "{body}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar> Neg for LaurentPolynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPolynomial { coeffs: self.coeffs.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<T: Scalar> Neg for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;
    fn neg(self) -> LaurentPolynomial<T> {
        -self.clone()
    }
}

impl<T: Scalar> Add for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;
    fn add(self, rhs: &LaurentPolynomial<T>) -> LaurentPolynomial<T> {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &rhs.coeffs {
            match coeffs.get_mut(k) {
                Some(slot) => *slot += c,
                None => {
                    coeffs.insert(*k, c.clone());
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPolynomial { coeffs }
    }
}

impl<T: Scalar> Sub for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;
    fn sub(self, rhs: &LaurentPolynomial<T>) -> LaurentPolynomial<T> {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &rhs.coeffs {
            match coeffs.get_mut(k) {
                Some(slot) => *slot -= c,
                None => {
                    coeffs.insert(*k, -c.clone());
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPolynomial { coeffs }
    }
}

impl<T: Scalar> Mul for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;
    fn mul(self, rhs: &LaurentPolynomial<T>) -> LaurentPolynomial<T> {
        let mut coeffs: BTreeMap<i64, T> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &rhs.coeffs {
                let prod = a.clone() * b;
                match coeffs.get_mut(&(i + j)) {
                    Some(slot) => *slot += &prod,
                    None => {
                        coeffs.insert(i + j, prod);
                    }
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPolynomial { coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for LaurentPolynomial<T> {
            type Output = LaurentPolynomial<T>;
            fn $method(self, rhs: LaurentPolynomial<T>) -> LaurentPolynomial<T> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, T: Scalar> $tr<&'a LaurentPolynomial<T>> for LaurentPolynomial<T> {
            type Output = LaurentPolynomial<T>;
            fn $method(self, rhs: &'a LaurentPolynomial<T>) -> LaurentPolynomial<T> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
