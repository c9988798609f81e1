//! 2x2 matrices over complex scalars and over first-order jets.

use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{Complex, Matrix, Precision, Scalar};

/// 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T> Mat2<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a: self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            b: self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            c: self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            d: self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        }
    }

    /// Inverse assuming determinant one.
    pub fn sl2_inverse(&self) -> Self {
        Mat2 { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat2 {
            a: self.a.clone() - o.a.clone(),
            b: self.b.clone() - o.b.clone(),
            c: self.c.clone() - o.c.clone(),
            d: self.d.clone() - o.d.clone(),
        }
    }
}

/// Element of SL(2, C).
pub type Sl2 = Mat2<Complex>;

impl Mat2<Complex> {
    pub fn identity(prec: Precision) -> Self {
        let (o, z) = (Complex::one(&prec), Complex::zero(&prec));
        Mat2::new(o.clone(), z.clone(), z, o)
    }

    /// Largest entry magnitude of `self - I`.
    pub fn distance_to_identity(&self) -> f64 {
        let id = Sl2::identity(self.a.precision());
        self.sub(&id).entries().iter().map(|x| x.abs_f64()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|x| x.abs_f64()).fold(0.0, f64::max)
    }

    pub fn with_precision(&self, prec: Precision) -> Self {
        Mat2::new(
            self.a.with_precision(prec),
            self.b.with_precision(prec),
            self.c.with_precision(prec),
            self.d.with_precision(prec),
        )
    }

    pub fn to_matrix(&self) -> Matrix<Complex> {
        Matrix::from_rows(vec![vec![self.a.clone(), self.b.clone()], vec![self.c.clone(), self.d.clone()]])
            .expect("2x2")
    }
}

/// Value with first derivatives in `s` and `u`.
#[derive(Clone, Debug)]
pub struct Jet {
    pub v: Complex,
    pub ds: Complex,
    pub du: Complex,
}

impl Jet {
    pub fn constant(v: Complex) -> Self {
        let z = Complex::zero(&v.precision());
        Jet { v, ds: z.clone(), du: z }
    }

    pub fn var_s(s: Complex) -> Self {
        let p = s.precision();
        Jet { v: s, ds: Complex::one(&p), du: Complex::zero(&p) }
    }

    pub fn var_u(u: Complex) -> Self {
        let p = u.precision();
        Jet { v: u, ds: Complex::zero(&p), du: Complex::one(&p) }
    }

    /// `1 / x` with the chain rule.
    pub fn recip(&self) -> Self {
        let inv = self.v.inv().expect("nonzero jet value");
        let d = -(inv.clone() * &inv);
        Jet { ds: self.ds.clone() * &d, du: self.du.clone() * &d, v: inv }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { v: self.v + o.v, ds: self.ds + o.ds, du: self.du + o.du }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { v: self.v - o.v, ds: self.ds - o.ds, du: self.du - o.du }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            ds: self.ds * &o.v + &(self.v.clone() * &o.ds),
            du: self.du * &o.v + &(self.v.clone() * &o.du),
            v: self.v * o.v,
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { v: -self.v, ds: -self.ds, du: -self.du }
    }
}
