//! Representation points and linear representations of presented groups.

use crate::algebra::{Complex, Matrix, Precision, Rational, Scalar};
use crate::knots::{GroupPresentation, Word};

use super::{RepsError, Sl2};

/// Default bound on the relator residual of a representation point.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Tolerance on `|tr [A, B] - 2|` for the irreducibility certificate.
pub const IRREDUCIBILITY_TOLERANCE: f64 = 1e-8;

/// Assignment of SL(2, C) matrices to the generators of a presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationPoint {
    images: Vec<Sl2>,
    residual: f64,
    riley: Option<(Complex, Complex)>,
}

impl RepresentationPoint {
    /// Records generator images and measures the relator residual.
    pub fn new(images: Vec<Sl2>, presentation: &GroupPresentation) -> Result<Self, RepsError> {
        if images.len() != presentation.generator_count() {
            return Err(RepsError::UnsupportedPresentation(format!(
                "{} images for {} generators",
                images.len(),
                presentation.generator_count()
            )));
        }
        let mut point = RepresentationPoint { images, residual: 0.0, riley: None };
        point.residual = presentation
            .relators()
            .iter()
            .map(|r| point.image(r).distance_to_identity())
            .fold(0.0, f64::max);
        Ok(point)
    }

    pub fn images(&self) -> &[Sl2] {
        &self.images
    }

    /// Largest entry of `rho(r) - I` over the relators.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Riley coordinates `(s, u)` when the point came from the Riley form.
    pub fn riley(&self) -> Option<&(Complex, Complex)> {
        self.riley.as_ref()
    }

    pub fn precision(&self) -> Precision {
        self.images[0].a.precision()
    }

    pub fn is_valid(&self, tolerance: f64) -> bool {
        self.residual < tolerance
    }

    pub fn image(&self, w: &Word) -> Sl2 {
        let mut acc = Sl2::identity(self.precision());
        for &l in w.letters() {
            let m = &self.images[l.unsigned_abs() as usize - 1];
            acc = if l > 0 { acc.mul(m) } else { acc.mul(&m.sl2_inverse()) };
        }
        acc
    }

    pub fn trace(&self, w: &Word) -> Complex {
        self.image(w).trace()
    }

    /// `tr [rho(x_i), rho(x_j)]`; it differs from 2 exactly when the two
    /// images have no common eigenvector.
    pub fn commutator_trace(&self, i: usize, j: usize) -> Complex {
        let (a, b) = (&self.images[i], &self.images[j]);
        a.mul(b).mul(&a.sl2_inverse()).mul(&b.sl2_inverse()).trace()
    }

    /// Some pair of generator images has commutator trace away from 2.
    pub fn is_irreducible(&self, tolerance: f64) -> bool {
        let n = self.images.len();
        let two = Complex::from_i64(2, &self.precision());
        (0..n).any(|i| (i + 1..n).any(|j| (self.commutator_trace(i, j) - &two).abs_f64() > tolerance))
    }

    /// `g rho g^-1`, which has the same character.
    pub fn conjugate(&self, g: &Sl2, presentation: &GroupPresentation) -> Result<Self, RepsError> {
        let gi = g.sl2_inverse();
        let images = self.images.iter().map(|m| g.mul(m).mul(&gi)).collect();
        RepresentationPoint::new(images, presentation)
    }

    pub fn with_precision(&self, prec: Precision, presentation: &GroupPresentation) -> Result<Self, RepsError> {
        let images = self.images.iter().map(|m| m.with_precision(prec)).collect();
        let mut p = RepresentationPoint::new(images, presentation)?;
        p.riley = self.riley.as_ref().map(|(s, u)| (s.with_precision(prec), u.with_precision(prec)));
        Ok(p)
    }
}

/// `I_w(rho) = tr rho(w)`.
pub fn trace_function(w: &Word, r: &RepresentationPoint) -> Complex {
    r.trace(w)
}

/// Riley form `rho(a) = [[s, 1], [0, 1/s]]`, `rho(b) = [[s, 0], [u, 1/s]]`
/// on a two-generator presentation. The residual is recorded, not enforced.
pub fn riley_candidate(s: &Complex, u: &Complex, presentation: &GroupPresentation) -> Result<RepresentationPoint, RepsError> {
    if presentation.generator_count() != 2 {
        return Err(RepsError::UnsupportedPresentation("Riley form needs two generators".into()));
    }
    let prec = s.precision().min(u.precision());
    let s = s.with_precision(prec);
    let u = u.with_precision(prec);
    let sinv = s.inv().map_err(|_| RepsError::DegenerateParameter("s = 0".into()))?;
    let (zero, one) = (Complex::zero(&prec), Complex::one(&prec));
    let a = Sl2::new(s.clone(), one, zero.clone(), sinv.clone());
    let b = Sl2::new(s.clone(), zero, u.clone(), sinv);
    let mut point = RepresentationPoint::new(vec![a, b], presentation)?;
    point.riley = Some((s, u));
    Ok(point)
}

/// A representation into `GL(n, T)` given by generator images.
#[derive(Clone, Debug)]
pub struct LinearRep<T: Scalar> {
    dim: usize,
    images: Vec<Matrix<T>>,
    inverses: Vec<Matrix<T>>,
    ctx: T::Context,
}

impl<T: Scalar> LinearRep<T> {
    pub fn new(images: Vec<Matrix<T>>, inverses: Vec<Matrix<T>>, ctx: T::Context) -> Self {
        let dim = images.first().map_or(1, |m| m.rows());
        LinearRep { dim, images, inverses, ctx }
    }

    /// The one-dimensional trivial representation.
    pub fn trivial(generators: usize, ctx: T::Context) -> Self {
        let id = Matrix::identity(1, &ctx);
        LinearRep { dim: 1, images: vec![id.clone(); generators], inverses: vec![id; generators], ctx }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn context(&self) -> &T::Context {
        &self.ctx
    }

    /// Image of a single letter.
    pub fn letter(&self, l: i32) -> &Matrix<T> {
        let i = l.unsigned_abs() as usize - 1;
        if l > 0 {
            &self.images[i]
        } else {
            &self.inverses[i]
        }
    }

    pub fn image(&self, w: &Word) -> Matrix<T> {
        let mut acc = Matrix::identity(self.dim, &self.ctx);
        for &l in w.letters() {
            acc = acc.mul(self.letter(l), &self.ctx).expect("square images");
        }
        acc
    }
}

impl LinearRep<Complex> {
    pub fn from_point(r: &RepresentationPoint) -> Self {
        let prec = r.precision();
        LinearRep {
            dim: 2,
            images: r.images().iter().map(Sl2::to_matrix).collect(),
            inverses: r.images().iter().map(|m| m.sl2_inverse().to_matrix()).collect(),
            ctx: prec,
        }
    }
}

impl LinearRep<Rational> {
    pub fn trivial_rational(generators: usize) -> Self {
        LinearRep::trivial(generators, ())
    }
}
