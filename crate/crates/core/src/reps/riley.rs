//! Nonabelian representations of two-generator one-relator groups in
//! Riley form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::roots::{newton_polish, polynomial_roots};
use crate::algebra::{Complex, LaurentPolynomial, Precision, Scalar};
use crate::knots::{GroupPresentation, Word};

use super::continuation::{gauss_newton, CurveSystem, Variable};
use super::point::IRREDUCIBILITY_TOLERANCE;
use super::{riley_candidate, Jet, Mat2, RepresentationPoint, RepsError};

type Poly = LaurentPolynomial<Complex>;

fn check_shape(presentation: &GroupPresentation) -> Result<&Word, RepsError> {
    if presentation.generator_count() != 2 || presentation.relators().len() != 1 {
        return Err(RepsError::UnsupportedPresentation(
            "Riley form needs two generators and one relator".into(),
        ));
    }
    Ok(&presentation.relators()[0])
}

/// Image of `w` under the Riley form with `u` kept symbolic.
fn symbolic_image(w: &Word, s: &Complex, sinv: &Complex) -> Mat2<Poly> {
    let prec = s.precision();
    let c = |x: &Complex| Poly::constant(x.clone());
    let one = Complex::one(&prec);
    let u = Poly::monomial(one.clone(), 1);
    let a = Mat2::new(c(s), c(&one), Poly::zero(), c(sinv));
    let b = Mat2::new(c(s), Poly::zero(), u, c(sinv));
    let mut acc = Mat2::new(c(&one), Poly::zero(), Poly::zero(), c(&one));
    for &l in w.letters() {
        let m = if l.unsigned_abs() == 1 { &a } else { &b };
        acc = if l > 0 { acc.mul(m) } else { acc.mul(&m.sl2_inverse()) };
    }
    acc
}

/// Splits the relator `r = L R` as `rho(L) = rho(R^-1)` at the cut that
/// keeps the u-degree of the equations lowest.
pub(crate) fn split_relator(r: &Word) -> (Word, Word) {
    let letters = r.letters();
    let b_count = |ls: &[i32]| ls.iter().filter(|l| l.unsigned_abs() == 2).count();
    let k = (0..=letters.len())
        .min_by_key(|&k| b_count(&letters[..k]).max(b_count(&letters[k..])))
        .unwrap_or(0);
    (Word::new(letters[..k].to_vec()), Word::new(letters[k..].to_vec()).inverse())
}

/// Riley parameters `u` at which the relator holds for the given `s`.
///
/// The entries of `rho(L) - rho(R^-1)` are expanded as polynomials in `u`;
/// the roots of the lowest-degree nonzero entry are refined and kept when
/// the full relator residual is below `tolerance`. Sorted by argument, then
/// modulus.
pub fn solve_u(s: &Complex, presentation: &GroupPresentation, tolerance: f64) -> Result<Vec<Complex>, RepsError> {
    let relator = check_shape(presentation)?;
    let prec = s.precision();
    let sinv = s.inv().map_err(|_| RepsError::DegenerateParameter("s = 0".into()))?;
    let (left, right) = split_relator(relator);
    let e = symbolic_image(&left, s, &sinv).sub(&symbolic_image(&right, s, &sinv));
    let scale = e.entries().iter().map(|p| p.max_log2_abs()).fold(f64::NEG_INFINITY, f64::max);
    let entries: Vec<Poly> = e
        .entries()
        .into_iter()
        .map(|p| p.clone().trimmed(|c| c.is_negligible(scale)))
        .filter(|p| !p.is_zero())
        .collect();
    let Some(f) = entries.iter().min_by_key(|p| p.high_degree().unwrap_or(0)) else {
        return Err(RepsError::UnsupportedPresentation("relator image does not depend on u".into()));
    };
    let hi = f.high_degree().unwrap_or(0);
    let dense: Vec<Complex> = (0..=hi).map(|k| f.coeff(k).cloned().unwrap_or_else(|| Complex::zero(&prec))).collect();
    let work = Precision::new((prec.bits() + 64).min(crate::algebra::MAX_PRECISION)).expect("valid");
    let dense_hp: Vec<Complex> = dense.iter().map(|c| c.with_precision(work)).collect();
    let mut roots: Vec<Complex> = Vec::new();
    for z in polynomial_roots(&dense, prec).map_err(|_| RepsError::DegenerateParameter("zero u-polynomial".into()))? {
        let z = newton_polish(&dense_hp, &z.with_precision(work), 60).with_precision(prec);
        let Ok(point) = riley_candidate(s, &z, presentation) else { continue };
        if point.residual() >= tolerance {
            continue;
        }
        let dup = roots.iter().any(|r| (r.clone() - &z).abs_f64() <= 1e-20 * (1.0 + z.abs_f64()));
        if !dup {
            roots.push(z);
        }
    }
    roots.sort_by(|x, y| x.arg_f64().total_cmp(&y.arg_f64()).then(x.abs_f64().total_cmp(&y.abs_f64())));
    Ok(roots)
}

/// Relator equations of the Riley form as functions of `(s, u)`.
#[derive(Clone, Debug)]
pub struct RileySystem<'a> {
    presentation: &'a GroupPresentation,
    left: Word,
    right: Word,
}

impl<'a> RileySystem<'a> {
    pub fn new(presentation: &'a GroupPresentation) -> Result<Self, RepsError> {
        let (left, right) = split_relator(check_shape(presentation)?);
        Ok(RileySystem { presentation, left, right })
    }

    fn jet_image(w: &Word, a: &Mat2<Jet>, b: &Mat2<Jet>, prec: Precision) -> Mat2<Jet> {
        let one = Jet::constant(Complex::one(&prec));
        let zero = Jet::constant(Complex::zero(&prec));
        let mut acc = Mat2::new(one.clone(), zero.clone(), zero, one);
        for &l in w.letters() {
            let m = if l.unsigned_abs() == 1 { a } else { b };
            acc = if l > 0 { acc.mul(m) } else { acc.mul(&m.sl2_inverse()) };
        }
        acc
    }
}

impl CurveSystem for RileySystem<'_> {
    fn equations(&self, s: &Complex, u: &Complex) -> Vec<Jet> {
        let prec = s.precision().min(u.precision());
        let sj = Jet::var_s(s.with_precision(prec));
        let sinv = sj.recip();
        let one = Jet::constant(Complex::one(&prec));
        let zero = Jet::constant(Complex::zero(&prec));
        let a = Mat2::new(sj.clone(), one, zero.clone(), sinv.clone());
        let b = Mat2::new(sj, zero, Jet::var_u(u.with_precision(prec)), sinv);
        let l = Self::jet_image(&self.left, &a, &b, prec);
        let r = Self::jet_image(&self.right, &a, &b, prec);
        let e = l.sub(&r);
        vec![e.a, e.b, e.c, e.d]
    }

    fn accept(&self, s: &Complex, u: &Complex, tolerance: f64) -> bool {
        riley_candidate(s, u, self.presentation).is_ok_and(|p| p.residual() < tolerance)
    }
}

/// Newton refinement of a Riley point in one coordinate, the other held
/// fixed.
pub fn polish(
    s: &Complex,
    u: &Complex,
    free: Variable,
    presentation: &GroupPresentation,
) -> Result<RepresentationPoint, RepsError> {
    let system = RileySystem::new(presentation)?;
    let (s2, u2) = match free {
        Variable::S => (gauss_newton(&system, s, u, Variable::S, 60).ok_or(RepsError::NoConvergence)?, u.clone()),
        Variable::U => (s.clone(), gauss_newton(&system, s, u, Variable::U, 60).ok_or(RepsError::NoConvergence)?),
    };
    riley_candidate(&s2, &u2, presentation)
}

/// Deterministic sample of irreducible points on the Riley curve.
///
/// Values of `s` are drawn from a seeded stream with modulus in `[0.6, 1.6]`
/// and argument at least 0.15 away from `0` and `pi` (off the parabolic
/// locus); every branch over each `s` is used in turn.
pub fn sample_irreducible_points(
    presentation: &GroupPresentation,
    count: usize,
    seed: u64,
    prec: Precision,
    tolerance: f64,
) -> Result<Vec<RepresentationPoint>, RepsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 10 * count + 10 {
            return Err(RepsError::NoConvergence);
        }
        let s = random_s(&mut rng, prec);
        for u in solve_u(&s, presentation, tolerance)? {
            let p = riley_candidate(&s, &u, presentation)?;
            if p.is_irreducible(IRREDUCIBILITY_TOLERANCE) && out.len() < count {
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn random_s(rng: &mut ChaCha8Rng, prec: Precision) -> Complex {
    let modulus: f64 = rng.gen_range(0.6..1.6);
    let mut arg: f64 = rng.gen_range(0.15..std::f64::consts::PI - 0.15);
    if rng.gen_bool(0.5) {
        arg = -arg;
    }
    Complex::new(prec, modulus * arg.cos(), modulus * arg.sin())
}
