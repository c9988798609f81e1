//! Scalar fields: exact rationals and complex floats of configurable precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float};

use super::AlgebraError;

/// Default working precision in mantissa bits.
pub const DEFAULT_PRECISION: u32 = 256;
/// Smallest accepted precision (IEEE double).
pub const MIN_PRECISION: u32 = 53;
/// Ceiling for automatic precision escalation.
pub const MAX_PRECISION: u32 = 8192;

/// Mantissa precision in bits for complex computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub fn new(bits: u32) -> Result<Self, AlgebraError> {
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&bits) {
            return Err(AlgebraError::InvalidPrecision(bits));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The next precision level (doubling), or `None` at the ceiling.
    pub fn escalate(self) -> Option<Precision> {
        if self.0 >= MAX_PRECISION {
            None
        } else {
            Some(Precision((self.0 * 2).min(MAX_PRECISION)))
        }
    }

    /// Number of decimal digits that represent this precision faithfully.
    pub fn decimal_digits(self) -> usize {
        (f64::from(self.0) * std::f64::consts::LOG10_2).ceil() as usize + 1
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(DEFAULT_PRECISION)
    }
}

/// A commutative field the linear algebra runs over.
///
/// Arithmetic goes through the std operator traits (by value, with the
/// right-hand side by value or by reference). Division is fallible and lives
/// on the trait.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Construction context (precision for floats, nothing for exact values).
    type Context: Clone + fmt::Debug + PartialEq + Send + Sync;

    /// Whether arithmetic is exact (no rounding, no tolerances).
    const EXACT: bool;

    fn context(&self) -> Self::Context;
    fn zero(ctx: &Self::Context) -> Self;
    fn one(ctx: &Self::Context) -> Self;
    fn from_i64(n: i64, ctx: &Self::Context) -> Self;

    /// True only for an exact zero value.
    fn is_zero(&self) -> bool;

    fn inv(&self) -> Result<Self, AlgebraError>;

    fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self.clone() * rhs.inv()?)
    }

    /// `log2 |x|`, `-inf` for zero.
    fn log2_abs(&self) -> f64;

    /// Mantissa bits, `None` for exact scalars.
    fn precision_bits(&self) -> Option<u32>;

    /// Zero test against a computation scale: exact zero for exact scalars,
    /// `|x| < 2^(-prec/2) * 2^scale_log2` for floating ones.
    fn is_negligible(&self, scale_log2: f64) -> bool {
        match self.precision_bits() {
            None => self.is_zero(),
            Some(p) => self.is_zero() || self.log2_abs() < scale_log2 - f64::from(p) / 2.0,
        }
    }

    fn pow_i64(&self, k: i64) -> Result<Self, AlgebraError>;

    /// A fixed point that avoids the special values of Laurent matrices with
    /// small integer coefficients (used for generic rank decisions).
    fn generic_point(ctx: &Self::Context) -> Self;

    /// `n` distinct interpolation nodes.
    fn interpolation_nodes(n: usize, ctx: &Self::Context) -> Vec<Self>;

    /// Coefficients `q_0..q_{n-1}` (ascending) of the polynomial of degree
    /// `< n` taking `values[k]` at `nodes[k]`, where `nodes` came from
    /// [`Scalar::interpolation_nodes`].
    fn interpolate(nodes: &[Self], values: &[Self]) -> Vec<Self>;
}

// ---------------------------------------------------------------------------
// Exact rationals

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(rug::Rational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self, AlgebraError> {
        if den == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Rational(rug::Rational::from((num, den))))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(rug::Rational::from(n))
    }

    pub fn numer(&self) -> &rug::Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &rug::Integer {
        self.0.denom()
    }

    pub fn inner(&self) -> &rug::Rational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn to_complex(&self, prec: Precision) -> Complex {
        Complex(rug::Complex::with_val(prec.bits(), &self.0))
    }

    pub fn is_one(&self) -> bool {
        *self.0.numer() == 1 && *self.0.denom() == 1
    }

    pub fn is_negative(&self) -> bool {
        self.0.cmp0() == Ordering::Less
    }

    /// Parses `"3"`, `"-2/7"`.
    pub fn parse(s: &str) -> Result<Self, AlgebraError> {
        let v = rug::Rational::parse(s.trim())
            .map_err(|e| AlgebraError::Parse(format!("bad rational {s:?}: {e}")))?;
        Ok(Rational(rug::Rational::from(v)))
    }
}

impl From<rug::Rational> for Rational {
    fn from(v: rug::Rational) -> Self {
        Rational(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign:ident, $op:tt) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(mut self, rhs: Rational) -> Rational {
                self.0 $op rhs.0;
                self
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(mut self, rhs: &'a Rational) -> Rational {
                self.0 $op &rhs.0;
                self
            }
        }
        impl<'a> $assign_tr<&'a Rational> for Rational {
            fn $assign(&mut self, rhs: &'a Rational) {
                self.0 $op &rhs.0;
            }
        }
    };
}

rational_binop!(Add, add, AddAssign, add_assign, +=);
rational_binop!(Sub, sub, SubAssign, sub_assign, -=);
rational_binop!(Mul, mul, MulAssign, mul_assign, *=);

impl Scalar for Rational {
    type Context = ();
    const EXACT: bool = true;

    fn context(&self) {}

    fn zero(_: &()) -> Self {
        Rational(rug::Rational::new())
    }

    fn one(_: &()) -> Self {
        Rational(rug::Rational::from(1))
    }

    fn from_i64(n: i64, _: &()) -> Self {
        Rational(rug::Rational::from(n))
    }

    fn is_zero(&self) -> bool {
        self.0.cmp0() == Ordering::Equal
    }

    fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Rational(self.0.clone().recip()))
    }

    fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let num = self.0.numer().to_f64().abs().log2();
        let den = self.0.denom().to_f64().log2();
        if num.is_finite() && den.is_finite() {
            num - den
        } else {
            // Outside f64 range: fall back to bit lengths.
            f64::from(self.0.numer().significant_bits()) - f64::from(self.0.denom().significant_bits())
        }
    }

    fn precision_bits(&self) -> Option<u32> {
        None
    }

    fn pow_i64(&self, k: i64) -> Result<Self, AlgebraError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| AlgebraError::Overflow)?;
        Ok(Rational(base.0.pow(e)))
    }

    fn generic_point(_: &()) -> Self {
        Rational(rug::Rational::from((7919, 3001)))
    }

    fn interpolation_nodes(n: usize, _: &()) -> Vec<Self> {
        (0..n as i64).map(|k| Rational::from_integer(k + 1)).collect()
    }

    fn interpolate(nodes: &[Self], values: &[Self]) -> Vec<Self> {
        // Newton divided differences, then expansion into the monomial basis.
        let n = nodes.len();
        let mut dd: Vec<Rational> = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = dd[i].clone() - &dd[i - 1];
                let den = nodes[i].clone() - &nodes[i - level];
                dd[i] = num.checked_div(&den).expect("interpolation nodes are distinct");
            }
        }
        let mut coeffs = vec![Rational::zero(&()); n];
        for i in (0..n).rev() {
            // coeffs <- coeffs * (t - nodes[i]) + dd[i]
            let mut next = vec![Rational::zero(&()); n];
            for j in 0..n {
                if coeffs[j].is_zero() {
                    continue;
                }
                if j + 1 < n {
                    next[j + 1] += &coeffs[j];
                }
                next[j] -= &(coeffs[j].clone() * &nodes[i]);
            }
            next[0] += &dd[i];
            coeffs = next;
        }
        coeffs
    }
}

// ---------------------------------------------------------------------------
// Complex floats

/// Complex floating-point value carrying its own precision. Binary operations
/// round to the smaller of the two operand precisions.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex(rug::Complex);

impl Complex {
    pub fn new(prec: Precision, re: f64, im: f64) -> Self {
        Complex(rug::Complex::with_val(prec.bits(), (re, im)))
    }

    pub fn from_rug(v: rug::Complex) -> Self {
        Complex(v)
    }

    pub fn from_parts(re: &Float, im: &Float, prec: Precision) -> Self {
        Complex(rug::Complex::with_val(prec.bits(), (re, im)))
    }

    pub fn inner(&self) -> &rug::Complex {
        &self.0
    }

    pub fn precision(&self) -> Precision {
        Precision(self.0.prec().0)
    }

    /// Same value, rounded (or exactly extended) to `prec`.
    pub fn with_precision(&self, prec: Precision) -> Complex {
        Complex(rug::Complex::with_val(prec.bits(), &self.0))
    }

    /// `exp(2 pi i * num/den)` at the given precision.
    pub fn root_of_unity(num: i64, den: i64, prec: Precision) -> Complex {
        let p = prec.bits();
        let mut angle = Float::with_val(p + 16, Constant::Pi);
        angle *= 2 * num;
        angle /= den;
        let (s, c) = angle.sin_cos(Float::new(p + 16));
        Complex(rug::Complex::with_val(p, (c, s)))
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    pub fn re_f64(&self) -> f64 {
        self.0.real().to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.0.imag().to_f64()
    }

    pub fn conj(&self) -> Complex {
        Complex(self.0.clone().conj())
    }

    /// `|x|` as an f64 (saturates to infinity beyond f64 range).
    pub fn abs_f64(&self) -> f64 {
        let a = Float::with_val(64, self.0.abs_ref());
        a.to_f64()
    }

    pub fn norm_sqr(&self) -> Complex {
        let p = self.0.prec().0;
        let n = Float::with_val(p, self.0.norm_ref());
        Complex(rug::Complex::with_val(p, (n.square(), 0)))
    }

    pub fn ln(&self) -> Complex {
        Complex(self.0.clone().ln())
    }

    pub fn exp(&self) -> Complex {
        Complex(self.0.clone().exp())
    }

    pub fn sqrt(&self) -> Complex {
        Complex(self.0.clone().sqrt())
    }

    /// Argument in `(-pi, pi]` as f64.
    pub fn arg_f64(&self) -> f64 {
        self.im_f64().atan2(self.re_f64())
    }

    pub fn scale_f64(&self, k: f64) -> Complex {
        let mut v = self.0.clone();
        v *= k;
        Complex(v)
    }

    pub fn mul_i64(&self, k: i64) -> Complex {
        let mut v = self.0.clone();
        v *= k;
        Complex(v)
    }

    /// Decimal strings `[re, im]` with enough digits for the value's
    /// precision.
    pub fn to_decimal_pair(&self) -> [String; 2] {
        let digits = self.precision().decimal_digits();
        [
            float_to_decimal(self.0.real(), digits),
            float_to_decimal(self.0.imag(), digits),
        ]
    }

    /// Parses `[re, im]` decimal strings.
    pub fn parse_pair(re: &str, im: &str, prec: Precision) -> Result<Complex, AlgebraError> {
        let r = parse_float(re, prec)?;
        let i = parse_float(im, prec)?;
        Ok(Complex::from_parts(&r, &i, prec))
    }

    /// Parses `"re,im"` (or a bare real number).
    pub fn parse_flag(text: &str, prec: Precision) -> Result<Complex, AlgebraError> {
        let mut parts = text.split(',');
        let re = parts.next().unwrap_or("").trim();
        let im = parts.next().unwrap_or("0").trim();
        if parts.next().is_some() {
            return Err(AlgebraError::Parse(format!("expected re,im but got {text:?}")));
        }
        Complex::parse_pair(re, im, prec)
    }

    fn unify(&mut self, rhs: &Complex) {
        let p = rhs.0.prec().0;
        if self.0.prec().0 > p {
            self.0.set_prec(p);
        }
    }
}

pub(crate) fn parse_float(text: &str, prec: Precision) -> Result<Float, AlgebraError> {
    let parsed = Float::parse(text.trim())
        .map_err(|e| AlgebraError::Parse(format!("bad number {text:?}: {e}")))?;
    Ok(Float::with_val(prec.bits(), parsed))
}

fn float_to_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = self.re_f64();
        let im = self.im_f64();
        if im >= 0.0 {
            write!(f, "({re:.12e}+{im:.12e}i)")
        } else {
            write!(f, "({re:.12e}{im:.12e}i)")
        }
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex(-self.0)
    }
}

macro_rules! complex_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign:ident, $op:tt) => {
        impl $tr for Complex {
            type Output = Complex;
            fn $method(mut self, rhs: Complex) -> Complex {
                self.unify(&rhs);
                self.0 $op rhs.0;
                self
            }
        }
        impl<'a> $tr<&'a Complex> for Complex {
            type Output = Complex;
            fn $method(mut self, rhs: &'a Complex) -> Complex {
                self.unify(rhs);
                self.0 $op &rhs.0;
                self
            }
        }
        impl<'a> $assign_tr<&'a Complex> for Complex {
            fn $assign(&mut self, rhs: &'a Complex) {
                self.unify(rhs);
                self.0 $op &rhs.0;
            }
        }
    };
}

complex_binop!(Add, add, AddAssign, add_assign, +=);
complex_binop!(Sub, sub, SubAssign, sub_assign, -=);
complex_binop!(Mul, mul, MulAssign, mul_assign, *=);

impl Scalar for Complex {
    type Context = Precision;
    const EXACT: bool = false;

    fn context(&self) -> Precision {
        self.precision()
    }

    fn zero(ctx: &Precision) -> Self {
        Complex(rug::Complex::new(ctx.bits()))
    }

    fn one(ctx: &Precision) -> Self {
        Complex(rug::Complex::with_val(ctx.bits(), 1))
    }

    fn from_i64(n: i64, ctx: &Precision) -> Self {
        Complex(rug::Complex::with_val(ctx.bits(), n))
    }

    fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Complex(self.0.clone().recip()))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut v = self.clone();
        v.unify(rhs);
        v.0 /= &rhs.0;
        Ok(v)
    }

    fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let mut a = Float::with_val(64, self.0.abs_ref());
        a.log2_mut();
        a.to_f64()
    }

    fn precision_bits(&self) -> Option<u32> {
        Some(self.0.prec().0)
    }

    fn pow_i64(&self, k: i64) -> Result<Self, AlgebraError> {
        if k < 0 && self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let e = i32::try_from(k).map_err(|_| AlgebraError::Overflow)?;
        let mut v = self.0.clone();
        v.assign(self.0.clone().pow(e));
        Ok(Complex(v))
    }

    fn generic_point(ctx: &Precision) -> Self {
        // Unit modulus, angle an irrational multiple of pi.
        let p = ctx.bits();
        let angle = Float::with_val(p + 16, 2).sqrt() - 0.5f64;
        let (s, c) = angle.sin_cos(Float::new(p + 16));
        Complex(rug::Complex::with_val(p, (c, s)))
    }

    fn interpolation_nodes(n: usize, ctx: &Precision) -> Vec<Self> {
        (0..n as i64).map(|k| Complex::root_of_unity(k, n as i64, *ctx)).collect()
    }

    fn interpolate(nodes: &[Self], values: &[Self]) -> Vec<Self> {
        // Inverse DFT: nodes are the n-th roots of unity in order.
        let n = nodes.len();
        let prec = values
            .iter()
            .map(|v| v.precision())
            .min()
            .unwrap_or_default();
        (0..n)
            .map(|m| {
                let mut acc = Complex::zero(&prec);
                for (k, v) in values.iter().enumerate() {
                    // nodes[k]^(-m) = conj(nodes[(k*m) mod n])
                    let w = nodes[(k * m) % n].conj();
                    acc += &(v.clone() * &w);
                }
                let mut out = acc.0;
                out /= n as u32;
                Complex(out)
            })
            .collect()
    }
}
