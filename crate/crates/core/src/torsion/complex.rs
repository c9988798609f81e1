//! Based chain complexes and their torsion.

use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentPolynomial, Matrix, Rational, Scalar};
use crate::knots::GroupPresentation;
use crate::reps::LinearRep;

use super::wada::{generator_block, require_deficiency_one, twisted_jacobian};
use super::{TorsionError, TorsionValue};

/// `C_n -> ... -> C_0` with the standard basis in each degree.
///
/// `boundaries[i]` is the matrix of `d_{i+1}: C_{i+1} -> C_i`, of size
/// `dim C_i x dim C_{i+1}` (columns are images of basis vectors).
#[derive(Clone, Debug, PartialEq)]
pub struct BasedChainComplex<E> {
    dims: Vec<usize>,
    boundaries: Vec<Matrix<E>>,
    /// Per degree, lifts to `ker d_i` of a homology basis.
    homology_bases: Option<Vec<Vec<Vec<E>>>>,
}

impl<E: Clone> BasedChainComplex<E> {
    pub fn new(boundaries: Vec<Matrix<E>>) -> Result<Self, TorsionError> {
        let Some(first) = boundaries.first() else {
            return Err(TorsionError::Shape("a complex needs at least one boundary map".into()));
        };
        let mut dims = vec![first.rows()];
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != dims[i] {
                return Err(TorsionError::Shape(format!(
                    "boundary {} has {} rows, expected {}",
                    i + 1,
                    d.rows(),
                    dims[i]
                )));
            }
            dims.push(d.cols());
        }
        Ok(BasedChainComplex { dims, boundaries, homology_bases: None })
    }

    pub fn with_homology_bases(mut self, bases: Vec<Vec<Vec<E>>>) -> Result<Self, TorsionError> {
        if bases.len() != self.dims.len() {
            return Err(TorsionError::HomologyBasisMismatch("one list of vectors per degree".into()));
        }
        for (i, b) in bases.iter().enumerate() {
            if b.iter().any(|v| v.len() != self.dims[i]) {
                return Err(TorsionError::HomologyBasisMismatch(format!("vector length in degree {i}")));
            }
        }
        self.homology_bases = Some(bases);
        Ok(self)
    }

    /// Top degree `n`.
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_i` for `1 <= i <= n`.
    pub fn boundary(&self, i: usize) -> &Matrix<E> {
        &self.boundaries[i - 1]
    }

    pub fn boundaries(&self) -> &[Matrix<E>] {
        &self.boundaries
    }

    fn homology(&self, i: usize) -> &[Vec<E>] {
        self.homology_bases.as_ref().map_or(&[], |h| &h[i])
    }
}

impl<T: Scalar> BasedChainComplex<T> {
    /// `d_i d_{i+1} = 0`, up to the zero tolerance for floating scalars.
    pub fn check_complex(&self, ctx: &T::Context) -> Result<(), TorsionError> {
        for i in 1..self.top_degree() {
            let (a, b) = (self.boundary(i), self.boundary(i + 1));
            let prod = a.mul(b, ctx)?;
            let scale = a.max_log2_abs() + b.max_log2_abs() + (a.cols().max(1) as f64).log2();
            if prod.entries().any(|x| !x.is_negligible(scale)) {
                return Err(TorsionError::NotAComplex { degree: i });
            }
        }
        Ok(())
    }

    /// Torsion with image bases taken as pivot columns of each boundary.
    pub fn algebraic_torsion(&self, ctx: &T::Context) -> Result<T, TorsionError> {
        let mut bases = Vec::with_capacity(self.dims.len());
        for i in 0..=self.top_degree() {
            bases.push(if i < self.top_degree() { self.boundary(i + 1).kernel_and_image_bases().1 } else { Vec::new() });
        }
        self.algebraic_torsion_with_bases(&bases, ctx)
    }

    /// `prod_i [b_i h_i b_{i-1} / c_i]^((-1)^(i+1))` for the given bases
    /// `b_i` of `im d_{i+1}`; each `b_{i-1}` is lifted through `d_i` by a
    /// pivoted solve.
    pub fn algebraic_torsion_with_bases(&self, image_bases: &[Vec<Vec<T>>], ctx: &T::Context) -> Result<T, TorsionError> {
        self.check_complex(ctx)?;
        if image_bases.len() != self.dims.len() {
            return Err(TorsionError::Shape("one image basis per degree".into()));
        }
        let mut tau = T::one(ctx);
        for i in 0..=self.top_degree() {
            let n = self.dims[i];
            let h = self.homology(i);
            if i >= 1 {
                let d = self.boundary(i);
                for v in h {
                    let image = d.mul_vec(v, ctx)?;
                    let scale = d.max_log2_abs() + v.iter().map(|x| x.log2_abs()).fold(f64::NEG_INFINITY, f64::max);
                    if image.iter().any(|x| !x.is_negligible(scale)) {
                        return Err(TorsionError::HomologyBasisMismatch(format!("vector not a cycle in degree {i}")));
                    }
                }
            }
            let mut columns: Vec<Vec<T>> = image_bases[i].clone();
            columns.extend(h.iter().cloned());
            if i >= 1 {
                let d = self.boundary(i);
                for b in &image_bases[i - 1] {
                    let lift = d
                        .solve(b)?
                        .ok_or_else(|| TorsionError::Shape(format!("basis vector not in the image of d_{i}")))?;
                    columns.push(lift);
                }
            }
            if columns.len() != n {
                return Err(TorsionError::HomologyBasisMismatch(format!(
                    "degree {i}: {} basis vectors for a {n}-dimensional chain group",
                    columns.len()
                )));
            }
            if n == 0 {
                continue;
            }
            let det = Matrix::from_columns(n, &columns)?.det()?;
            if det.is_zero() {
                return Err(TorsionError::HomologyBasisMismatch(format!("degree {i}: vectors are not a basis")));
            }
            tau = if i % 2 == 1 { tau * &det } else { tau.checked_div(&det)? };
        }
        Ok(tau)
    }
}

impl<T: Scalar> BasedChainComplex<LaurentPolynomial<T>> {
    pub fn check_complex(&self) -> Result<(), TorsionError> {
        for i in 1..self.top_degree() {
            let (a, b) = (self.boundary(i), self.boundary(i + 1));
            let prod = a.laurent_mul(b)?;
            let max = |m: &Matrix<LaurentPolynomial<T>>| {
                m.entries().map(|p| p.max_log2_abs()).fold(f64::NEG_INFINITY, f64::max)
            };
            let scale = max(a) + max(b) + 2.0 * (a.cols().max(1) as f64).log2();
            if prod.entries().any(|p| p.terms().any(|(_, c)| !c.is_negligible(scale))) {
                return Err(TorsionError::NotAComplex { degree: i });
            }
        }
        Ok(())
    }

    /// Torsion over the field of fractions of Laurent polynomials, for
    /// acyclic complexes. Image bases are the pivot columns of each boundary
    /// at a generic value of `t`, so the lifts are unit vectors and each
    /// base change is a single Laurent determinant.
    pub fn laurent_torsion(&self, ctx: &T::Context) -> Result<TorsionValue<T>, TorsionError> {
        if self.homology_bases.is_some() {
            return Err(TorsionError::NotAcyclic);
        }
        self.check_complex()?;
        let t0 = T::generic_point(ctx);
        let n = self.top_degree();
        // pivots[i] = pivot columns of d_i, i = 1..=n; none for d_0, d_{n+1}.
        let mut pivots: Vec<Vec<usize>> = vec![Vec::new(); n + 2];
        for i in 1..=n {
            pivots[i] = self.boundary(i).eval(&t0)?.row_echelon().pivots;
        }
        for i in 0..=n {
            if pivots[i].len() + pivots[i + 1].len() != self.dims[i] {
                return Err(TorsionError::NotAcyclic);
            }
        }
        let mut numerator = LaurentPolynomial::one(ctx);
        let mut denominator = LaurentPolynomial::one(ctx);
        for i in 0..=n {
            let dim = self.dims[i];
            if dim == 0 {
                continue;
            }
            let mut columns: Vec<Vec<LaurentPolynomial<T>>> = Vec::with_capacity(dim);
            if i < n {
                let d = self.boundary(i + 1);
                columns.extend(pivots[i + 1].iter().map(|&c| d.column(c)));
            }
            for &j in &pivots[i] {
                columns.push(
                    (0..dim)
                        .map(|r| if r == j { LaurentPolynomial::one(ctx) } else { LaurentPolynomial::zero() })
                        .collect(),
                );
            }
            let det = Matrix::from_columns(dim, &columns)?.det_laurent(None, ctx)?;
            if det.is_zero() {
                return Err(TorsionError::NotAcyclic);
            }
            if i % 2 == 1 {
                numerator = &numerator * &det;
            } else {
                denominator = &denominator * &det;
            }
        }
        Ok(TorsionValue { numerator, denominator })
    }
}

/// Twisted cellular chain complex `C_2 -> C_1 -> C_0` of the presentation
/// 2-complex: `d_2` is the transposed twisted Fox Jacobian and `d_1` the
/// transposed column of blocks `(alpha (x) rho)(x_j) - I`.
pub fn presentation_complex<T: Scalar>(
    presentation: &GroupPresentation,
    rep: &LinearRep<T>,
) -> Result<BasedChainComplex<LaurentPolynomial<T>>, TorsionError> {
    require_deficiency_one(presentation)?;
    let d2 = twisted_jacobian(presentation, rep).transpose();
    let column: Vec<Vec<_>> =
        (0..presentation.generator_count()).map(|j| vec![generator_block(presentation, rep, j)]).collect();
    let d1 = Matrix::from_blocks(&column)?.transpose();
    BasedChainComplex::new(vec![d1, d2])
}

/// Raw complex description: `degrees` from `n` down to 0, `boundaries`
/// listing `d_n, ..., d_1` as rows of Laurent polynomial strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplexFile {
    pub degrees: Vec<i64>,
    pub boundaries: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub homology_bases: Option<Vec<Vec<Vec<String>>>>,
}

/// Torsion of a raw complex: an exact rational when every entry is a
/// constant, otherwise a fraction of Laurent polynomials over Q.
#[derive(Clone, Debug, PartialEq)]
pub enum RawTorsion {
    Scalar(Rational),
    Laurent(TorsionValue<Rational>),
}

impl std::fmt::Display for RawTorsion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RawTorsion::Scalar(x) => write!(f, "{x}"),
            RawTorsion::Laurent(v) => write!(f, "{v}"),
        }
    }
}

impl RawComplexFile {
    pub fn parse(text: &str) -> Result<Self, TorsionError> {
        serde_json::from_str(text).map_err(|e| TorsionError::Parse(format!("complex file: {e}")))
    }

    pub fn torsion(&self) -> Result<RawTorsion, TorsionError> {
        let n = self.boundaries.len();
        let expected: Vec<i64> = (0..=n as i64).rev().collect();
        if self.degrees != expected {
            return Err(TorsionError::Shape(format!("degrees must be {expected:?}")));
        }
        let parse = |s: &String| LaurentPolynomial::<Rational>::parse(s).map_err(TorsionError::from);
        // Stored top-down; the engine indexes bottom-up.
        let mut boundaries = Vec::with_capacity(n);
        for m in self.boundaries.iter().rev() {
            let rows = m.iter().map(|r| r.iter().map(parse).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>()?;
            boundaries.push(Matrix::from_rows(rows)?);
        }
        let constant = |p: &LaurentPolynomial<Rational>| p.is_zero() || (p.len() == 1 && p.coeff(0).is_some());
        let homology = match &self.homology_bases {
            None => None,
            Some(h) => {
                let mut per_degree = Vec::with_capacity(h.len());
                for vectors in h.iter().rev() {
                    per_degree.push(
                        vectors
                            .iter()
                            .map(|v| v.iter().map(parse).collect::<Result<Vec<_>, _>>())
                            .collect::<Result<Vec<_>, _>>()?,
                    );
                }
                Some(per_degree)
            }
        };
        let all_constant = boundaries.iter().all(|m: &Matrix<_>| m.entries().all(constant))
            && homology.iter().flatten().flatten().flatten().all(constant);
        if all_constant {
            let to_q = |p: &LaurentPolynomial<Rational>| p.coeff(0).cloned().unwrap_or_else(|| Rational::from_integer(0));
            let mut c = BasedChainComplex::new(boundaries.iter().map(|m| m.map(to_q)).collect())?;
            if let Some(h) = &homology {
                c = c.with_homology_bases(h.iter().map(|vs| vs.iter().map(|v| v.iter().map(to_q).collect()).collect()).collect())?;
            }
            return Ok(RawTorsion::Scalar(c.algebraic_torsion(&())?));
        }
        if homology.is_some() {
            return Err(TorsionError::NotAcyclic);
        }
        Ok(RawTorsion::Laurent(BasedChainComplex::new(boundaries)?.laurent_torsion(&())?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Precision;
    use crate::knots::{builtin_knot, builtin_names};
    use crate::reps::{sample_irreducible_points, RESIDUAL_TOLERANCE};
    use crate::torsion::wada_invariant;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Q> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Q::from_integer).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_complex() {
        let c = BasedChainComplex::new(vec![qm(vec![vec![1]])]).unwrap();
        assert_eq!(c.algebraic_torsion(&()).unwrap(), Q::from_integer(1));
    }

    #[test]
    fn doubling_complex() {
        let c = BasedChainComplex::new(vec![qm(vec![vec![2]])]).unwrap();
        assert_eq!(c.algebraic_torsion(&()).unwrap(), Q::new(1, 2).unwrap());
    }

    #[test]
    fn not_a_complex() {
        let c = BasedChainComplex::new(vec![qm(vec![vec![1]]), qm(vec![vec![1]])]).unwrap();
        assert!(matches!(c.algebraic_torsion(&()), Err(TorsionError::NotAComplex { degree: 1 })));
    }

    #[test]
    fn homology_basis_required_and_used() {
        // 0 -> Q --0--> Q -> 0: H_1 = H_0 = Q.
        let c = BasedChainComplex::new(vec![qm(vec![vec![0]])]).unwrap();
        assert!(matches!(c.algebraic_torsion(&()), Err(TorsionError::HomologyBasisMismatch(_))));
        let h = vec![vec![vec![Q::from_integer(3)]], vec![vec![Q::from_integer(5)]]];
        let c = c.with_homology_bases(h).unwrap();
        assert_eq!(c.algebraic_torsion(&()).unwrap(), Q::new(5, 3).unwrap());
    }

    fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Q> {
        loop {
            let m = Matrix::from_fn(n, n, |_, _| Q::from_integer(rng.gen_range(-3..=3)));
            if n == 0 || !m.det().unwrap().is_zero() {
                return m;
            }
        }
    }

    /// Acyclic `0 -> Q^a -> Q^(a+b) -> Q^b -> 0`.
    fn random_acyclic(rng: &mut ChaCha8Rng) -> BasedChainComplex<Q> {
        let a = rng.gen_range(1..=3);
        let b = rng.gen_range(1..=3);
        let m = random_invertible(rng, a + b);
        let minv = {
            let id = Matrix::identity(a + b, &());
            let cols: Vec<Vec<Q>> = (0..a + b).map(|j| m.solve(&id.column(j)).unwrap().unwrap()).collect();
            Matrix::from_columns(a + b, &cols).unwrap()
        };
        let d2 = m.select_columns(&(0..a).collect::<Vec<_>>());
        let d1 = random_invertible(rng, b).mul(&minv.select_rows(&(a..a + b).collect::<Vec<_>>()), &()).unwrap();
        BasedChainComplex::new(vec![d1, d2]).unwrap()
    }

    fn direct_sum(x: &BasedChainComplex<Q>, y: &BasedChainComplex<Q>) -> BasedChainComplex<Q> {
        let ds = x
            .boundaries()
            .iter()
            .zip(y.boundaries())
            .map(|(p, q)| {
                let zr = Matrix::from_fn(p.rows(), q.cols(), |_, _| Q::from_integer(0));
                let zl = Matrix::from_fn(q.rows(), p.cols(), |_, _| Q::from_integer(0));
                Matrix::from_blocks(&[vec![p.clone(), zr], vec![zl, q.clone()]]).unwrap()
            })
            .collect();
        BasedChainComplex::new(ds).unwrap()
    }

    #[test]
    fn direct_sum_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let (x, y) = (random_acyclic(&mut rng), random_acyclic(&mut rng));
            let lhs = direct_sum(&x, &y).algebraic_torsion(&()).unwrap();
            let rhs = x.algebraic_torsion(&()).unwrap() * &y.algebraic_torsion(&()).unwrap();
            assert!(lhs == rhs || lhs == -rhs);
        }
    }

    #[test]
    fn independent_of_image_bases() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let c = random_acyclic(&mut rng);
            let base = c.algebraic_torsion(&()).unwrap();
            let mut bases = Vec::new();
            for i in 0..=c.top_degree() {
                let b = if i < c.top_degree() { c.boundary(i + 1).kernel_and_image_bases().1 } else { Vec::new() };
                // Mix the pivot basis by a random invertible matrix.
                let k = b.len();
                let g = random_invertible(&mut rng, k);
                let mixed: Vec<Vec<Q>> = (0..k)
                    .map(|j| {
                        let mut v = vec![Q::from_integer(0); c.dims()[i]];
                        for (l, bl) in b.iter().enumerate() {
                            for (r, x) in bl.iter().enumerate() {
                                v[r] += &(g.get(l, j).clone() * x);
                            }
                        }
                        v
                    })
                    .collect();
                bases.push(mixed);
            }
            let changed = c.algebraic_torsion_with_bases(&bases, &()).unwrap();
            // The determinant of g enters degree i and degree i+1 with
            // opposite exponents, so the value is unchanged.
            assert_eq!(changed, base);
        }
    }

    #[test]
    fn presentation_complex_is_a_complex() {
        let prec = Precision::default();
        for name in builtin_names() {
            let k = builtin_knot(name).unwrap();
            let pts = sample_irreducible_points(&k.presentation, 3, 5, prec, RESIDUAL_TOLERANCE).unwrap();
            for r in &pts {
                let c = presentation_complex(&k.presentation, &LinearRep::from_point(r)).unwrap();
                c.check_complex().unwrap();
            }
        }
    }

    #[test]
    fn trefoil_trivial_complex_is_acyclic_and_matches_wada() {
        let p = builtin_knot("3_1").unwrap().presentation;
        let rep = LinearRep::trivial_rational(2);
        let c = presentation_complex(&p, &rep).unwrap();
        let tau = c.laurent_torsion(&()).unwrap();
        let w = wada_invariant(&p, &rep, None).unwrap();
        assert!(tau.equals_up_to_units(&w, 0.0));
    }

    #[test]
    fn complex_torsion_matches_wada_at_riley_points() {
        let p = builtin_knot("5_2").unwrap().presentation;
        let pts = sample_irreducible_points(&p, 3, 8, Precision::default(), RESIDUAL_TOLERANCE).unwrap();
        for r in &pts {
            let rep = LinearRep::from_point(r);
            let tau = presentation_complex(&p, &rep).unwrap().laurent_torsion(rep.context()).unwrap();
            let w = wada_invariant(&p, &rep, None).unwrap();
            assert!(tau.distance_up_to_units(&w) < 1e-30);
        }
    }

    #[test]
    fn raw_doubling_file() {
        let f = RawComplexFile::parse(r#"{"degrees":[1,0], "boundaries":[[["2"]]]}"#).unwrap();
        assert_eq!(f.torsion().unwrap().to_string(), "1/2");
        let g = RawComplexFile::parse(r#"{"degrees":[1,0], "boundaries":[[["t-1"]]]}"#).unwrap();
        assert_eq!(g.torsion().unwrap().to_string(), "(1) / (-1+t)");
    }
}
