//! Dense matrices over scalars and Laurent polynomials.

use std::fmt;

use super::laurent::LaurentPolynomial;
use super::scalar::{Scalar, MAX_PRECISION};
use super::AlgebraError;

/// Headroom, in bits, between the rounding-noise floor of a determinant and
/// the smallest coefficient accepted as a genuine value.
const GUARD_BITS: f64 = 24.0;

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1)).take(self.rows)).finish()
    }
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors, which must all have the same length.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: n, cols: m, data: rows.into_iter().flatten().collect() })
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Result<Self, AlgebraError> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(AlgebraError::DimensionMismatch("column length".into()));
        }
        Ok(Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    /// Assembles a block matrix; blocks in a block row share their row count
    /// and blocks in a block column share their column count.
    pub fn from_blocks(blocks: &[Vec<Matrix<E>>]) -> Result<Self, AlgebraError> {
        let heights: Vec<usize> = blocks.iter().map(|row| row.first().map_or(0, |b| b.rows)).collect();
        let widths: Vec<usize> = blocks.first().map_or(Vec::new(), |row| row.iter().map(|b| b.cols).collect());
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(AlgebraError::DimensionMismatch("block row length".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(AlgebraError::DimensionMismatch("block shape".into()));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut data = Vec::with_capacity(rows * cols);
        for (bi, row) in blocks.iter().enumerate() {
            for i in 0..heights[bi] {
                for b in row {
                    data.extend_from_slice(b.row(i));
                }
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut E {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &E> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<F: Clone, X>(&self, f: impl FnMut(&E) -> Result<F, X>) -> Result<Matrix<F>, X> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

/// Result of a reduced row-echelon computation.
#[derive(Clone, Debug)]
pub struct RowEchelon<T> {
    pub reduced: Matrix<T>,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Matrix<T> {
    pub fn identity(n: usize, ctx: &T::Context) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one(ctx) } else { T::zero(ctx) })
    }

    pub fn zeros(rows: usize, cols: usize, ctx: &T::Context) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero(ctx))
    }

    /// Matrix product; `ctx` supplies zeros when the inner dimension is 0.
    pub fn mul(&self, rhs: &Self, ctx: &T::Context) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero(ctx);
            for k in 0..self.cols {
                acc += &(self.get(i, k).clone() * rhs.get(k, j));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[T], ctx: &T::Context) -> Result<Vec<T>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero(ctx);
                for (a, x) in self.row(i).iter().zip(v) {
                    acc += &(a.clone() * x);
                }
                acc
            })
            .collect())
    }

    /// Largest `log2 |a_ij|`.
    pub fn max_log2_abs(&self) -> f64 {
        self.data.iter().map(|x| x.log2_abs()).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `log2` of the Hadamard bound `prod_i ||row_i||`, an upper bound on
    /// `|det|` and the reference scale for its rounding error.
    pub fn hadamard_log2(&self) -> f64 {
        (0..self.rows)
            .map(|i| {
                let logs: Vec<f64> = self.row(i).iter().map(|x| x.log2_abs()).collect();
                let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                if m == f64::NEG_INFINITY {
                    return f64::NEG_INFINITY;
                }
                let s: f64 = logs.iter().map(|l| (2.0 * (l - m)).exp2()).sum();
                m + 0.5 * s.log2()
            })
            .sum()
    }

    /// Determinant: fraction-free (Bareiss) elimination for exact scalars,
    /// partial pivoting for floating ones.
    pub fn det(&self) -> Result<T, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Err(AlgebraError::DimensionMismatch("0x0 determinant needs a context".into()));
        }
        let ctx = self.data[0].context();
        if T::EXACT {
            self.det_bareiss(&ctx)
        } else {
            self.det_partial_pivot(&ctx)
        }
    }

    fn det_bareiss(&self, ctx: &T::Context) -> Result<T, AlgebraError> {
        let n = self.rows;
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = T::one(ctx);
        for k in 0..n.saturating_sub(1) {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return Ok(T::zero(ctx));
            };
            if p != k {
                m.swap_rows(p, k);
                negate = !negate;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m.get(i, j).clone() * &pivot - m.get(i, k).clone() * m.get(k, j);
                    m.set(i, j, v.checked_div(&prev)?);
                }
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }

    fn det_partial_pivot(&self, ctx: &T::Context) -> Result<T, AlgebraError> {
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one(ctx);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| m.get(a, k).log2_abs().total_cmp(&m.get(b, k).log2_abs()).then(b.cmp(&a)))
                .expect("nonempty range");
            if m.get(p, k).is_zero() {
                return Ok(T::zero(ctx));
            }
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let pivot = m.get(k, k).clone();
            let inv = pivot.inv()?;
            det *= &pivot;
            for i in k + 1..n {
                if m.get(i, k).is_zero() {
                    continue;
                }
                let factor = m.get(i, k).clone() * &inv;
                for j in k + 1..n {
                    let v = m.get(i, j).clone() - factor.clone() * m.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Reduced row-echelon form. For floating scalars a candidate pivot is
    /// treated as zero when it is negligible against the largest magnitude
    /// seen during the elimination.
    pub fn row_echelon(&self) -> RowEchelon<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut scale = m.max_log2_abs();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let candidates = (r..self.rows).filter(|&i| !m.get(i, c).is_negligible(scale));
            let chosen = if T::EXACT {
                candidates.min()
            } else {
                candidates.max_by(|&a, &b| m.get(a, c).log2_abs().total_cmp(&m.get(b, c).log2_abs()).then(b.cmp(&a)))
            };
            let Some(p) = chosen else { continue };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = m.get(r, j).clone() * &inv;
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..self.cols {
                    let v = m.get(i, j).clone() - factor.clone() * m.get(r, j);
                    if !T::EXACT {
                        scale = scale.max(v.log2_abs());
                    }
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RowEchelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().pivots.len()
    }

    /// Bases of the kernel and of the image (column space). The image basis
    /// consists of the pivot columns of `self`.
    pub fn kernel_and_image_bases(&self) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
        let ech = self.row_echelon();
        let image = ech.pivots.iter().map(|&c| self.column(c)).collect();
        (kernel_from_echelon(&ech, self.cols, self.data.first().map(|x| x.context())), image)
    }

    /// Some `x` with `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[T]) -> Result<Option<Vec<T>>, AlgebraError> {
        if b.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch("right-hand side length".into()));
        }
        let Some(ctx) = self.data.first().map(|x| x.context()).or_else(|| b.first().map(|x| x.context())) else {
            return Ok(Some(Vec::new()));
        };
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let ech = aug.row_echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![T::zero(&ctx); self.cols];
        for (r, &c) in ech.pivots.iter().enumerate() {
            x[c] = ech.reduced.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }
}

fn kernel_from_echelon<T: Scalar>(ech: &RowEchelon<T>, cols: usize, ctx: Option<T::Context>) -> Vec<Vec<T>> {
    let Some(ctx) = ctx else { return Vec::new() };
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(&ctx); cols];
            v[f] = T::one(&ctx);
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -ech.reduced.get(r, f).clone();
            }
            v
        })
        .collect()
}

/// Kernel and image bases of a scalar matrix.
pub fn kernel_and_image_bases<T: Scalar>(m: &Matrix<T>) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    m.kernel_and_image_bases()
}

impl<T: Scalar> Matrix<LaurentPolynomial<T>> {
    pub fn eval(&self, t0: &T) -> Result<Matrix<T>, AlgebraError> {
        self.try_map(|p| p.eval(t0))
    }

    pub fn laurent_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = LaurentPolynomial::zero();
            for k in 0..self.cols {
                acc = acc + &(self.get(i, k) * rhs.get(k, j));
            }
            acc
        }))
    }

    /// Row-wise degree bounds `(D_lo, D_hi)` for the determinant, or `None`
    /// if some row vanishes identically.
    pub fn degree_bounds(&self) -> Option<(i64, i64)> {
        let mut lo = 0;
        let mut hi = 0;
        for i in 0..self.rows {
            let row = self.row(i).iter().filter(|p| !p.is_zero());
            let (rlo, rhi) = row.fold((None, None), |(l, h): (Option<i64>, Option<i64>), p| {
                let pl = p.low_degree().expect("nonzero");
                let ph = p.high_degree().expect("nonzero");
                (Some(l.map_or(pl, |x| x.min(pl))), Some(h.map_or(ph, |x| x.max(ph))))
            });
            lo += rlo?;
            hi += rhi?;
        }
        Some((lo, hi))
    }

    /// Determinant by evaluation at `D_hi - D_lo + 1` interpolation nodes
    /// (roots of unity for complex scalars) followed by interpolation.
    pub fn det_laurent(
        &self,
        degree_hint: Option<(i64, i64)>,
        ctx: &T::Context,
    ) -> Result<LaurentPolynomial<T>, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NonSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows == 0 {
            return Ok(LaurentPolynomial::one(ctx));
        }
        let Some((lo, hi)) = degree_hint.or_else(|| self.degree_bounds()) else {
            return Ok(LaurentPolynomial::zero());
        };
        if hi < lo {
            return Ok(LaurentPolynomial::zero());
        }
        let n = usize::try_from(hi - lo + 1).map_err(|_| AlgebraError::Overflow)?;
        let nodes = T::interpolation_nodes(n, ctx);
        let mut scale = f64::NEG_INFINITY;
        let mut values = Vec::with_capacity(n);
        for z in &nodes {
            let m = self.eval(z)?;
            scale = scale.max(m.hadamard_log2());
            values.push(m.det()? * &z.pow_i64(-lo)?);
        }
        let coeffs = T::interpolate(&nodes, &values);
        let Some(prec) = coeffs.first().and_then(|c| c.precision_bits()) else {
            return Ok(LaurentPolynomial::from_dense(lo, coeffs));
        };
        if scale == f64::NEG_INFINITY {
            return Ok(LaurentPolynomial::zero());
        }
        let p = f64::from(prec);
        let threshold = scale - p / 2.0;
        let noise_ceiling = scale - p + GUARD_BITS + (n as f64).log2();
        let logs: Vec<f64> = coeffs.iter().map(|c| c.log2_abs()).collect();
        if logs.iter().any(|&l| l >= noise_ceiling && l < threshold) {
            return Err(AlgebraError::InterpolationIllConditioned { precision: prec });
        }
        let kept: Vec<(i64, T)> = coeffs
            .into_iter()
            .zip(&logs)
            .enumerate()
            .filter(|(_, (_, &l))| l >= threshold)
            .map(|(k, (c, _))| (lo + k as i64, c))
            .collect();
        if kept.is_empty() && logs.iter().any(|l| l.is_finite()) && prec < MAX_PRECISION {
            // Nothing survived but the values were not exactly zero: the
            // result is buried in rounding noise at this precision.
            return Err(AlgebraError::InterpolationIllConditioned { precision: prec });
        }
        Ok(LaurentPolynomial::from_terms(kept))
    }
}

/// Determinant of a Laurent-polynomial matrix; see [`Matrix::det_laurent`].
pub fn det_laurent<T: Scalar>(
    m: &Matrix<LaurentPolynomial<T>>,
    degree_hint: Option<(i64, i64)>,
    ctx: &T::Context,
) -> Result<LaurentPolynomial<T>, AlgebraError> {
    m.det_laurent(degree_hint, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Complex, Precision, Rational};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;
    type LQ = LaurentPolynomial<Rational>;

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Q> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Q::from_integer).collect()).collect()).unwrap()
    }

    fn lm(rows: &[&[&str]]) -> Matrix<LQ> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| LQ::parse(s).unwrap()).collect()).collect()).unwrap()
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(m: &Matrix<Q>) -> Q {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Q::zero(&());
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = m.select_rows(&rows).select_columns(&cols);
            let term = m.get(0, j).clone() * &cofactor_det(&minor);
            if j % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }

    /// Fraction-free elimination over Q[t] with exact polynomial division.
    fn bareiss_poly(m: &Matrix<LQ>) -> LQ {
        let n = m.rows();
        let mut a = m.clone();
        let mut prev = LQ::one(&());
        let mut negate = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else { return LQ::zero() };
            if p != k {
                a.swap_rows(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                    let (q, r) = v.div_rem(&prev).unwrap();
                    assert!(r.is_zero());
                    a.set(i, j, q);
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if negate { -d } else { d }
    }

    #[test]
    fn identity_and_transposition() {
        assert_eq!(qm(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).det().unwrap(), Q::from_integer(1));
        assert_eq!(qm(vec![vec![0, 1], vec![1, 0]]).det().unwrap(), Q::from_integer(-1));
        let p = Precision::default();
        let swap = qm(vec![vec![0, 1], vec![1, 0]]).map(|x| x.to_complex(p));
        assert!((swap.det().unwrap() + &Complex::one(&p)).is_zero());
    }

    #[test]
    fn non_square_rejected() {
        let m = qm(vec![vec![1, 2, 3], vec![4, 5, 6]]);
        assert!(matches!(m.det(), Err(AlgebraError::NonSquare { rows: 2, cols: 3 })));
    }

    #[test]
    fn random_rational_det_matches_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = Matrix::from_fn(5, 5, |_, _| Q::new(rng.gen_range(-9..=9), rng.gen_range(1..=4)).unwrap());
            assert_eq!(m.det().unwrap(), cofactor_det(&m));
        }
    }

    #[test]
    fn complex_det_matches_rational() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = Precision::default();
        for _ in 0..10 {
            let m = Matrix::from_fn(4, 4, |_, _| Q::from_integer(rng.gen_range(-6..=6)));
            let exact = m.det().unwrap().to_complex(p);
            let approx = m.map(|x| x.to_complex(p)).det().unwrap();
            assert!((approx - &exact).log2_abs() < -200.0);
        }
    }

    #[test]
    fn kernel_and_image_examples() {
        let zero = qm(vec![vec![0, 0], vec![0, 0]]);
        let (k, im) = zero.kernel_and_image_bases();
        assert_eq!(k.len(), 2);
        assert!(im.is_empty());

        let id = qm(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let (k, im) = id.kernel_and_image_bases();
        assert!(k.is_empty());
        assert_eq!(im.len(), 3);

        let ones = qm(vec![vec![1; 3]; 3]);
        let (k, im) = ones.kernel_and_image_bases();
        assert_eq!((k.len(), im.len()), (2, 1));
        for v in &k {
            assert!(ones.mul_vec(v, &()).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = qm(vec![vec![1, 1], vec![2, 2]]);
        let b = vec![Q::from_integer(3), Q::from_integer(6)];
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x, &()).unwrap(), b);
        assert!(m.solve(&[Q::from_integer(1), Q::from_integer(1)]).unwrap().is_none());
    }

    #[test]
    fn det_laurent_examples() {
        let p = Precision::default();
        let diag = lm(&[&["t", "0"], &["0", "t^-1"]]);
        assert_eq!(diag.det_laurent(None, &()).unwrap(), LQ::one(&()));
        let c = diag.map(|x| x.to_complex(p)).det_laurent(None, &p).unwrap();
        assert_eq!(c.len(), 1);
        assert!((c.coeff(0).unwrap().clone() - &Complex::one(&p)).log2_abs() < -200.0);

        let sq = lm(&[&["t-1", "0"], &["0", "t-1"]]);
        assert_eq!(sq.det_laurent(None, &()).unwrap(), LQ::parse("t^2-2t+1").unwrap());
    }

    #[test]
    fn det_laurent_zero_row() {
        let m = lm(&[&["0", "0"], &["1", "t"]]);
        assert!(m.det_laurent(None, &()).unwrap().is_zero());
    }

    fn random_laurent_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<LQ> {
        Matrix::from_fn(n, n, |_, _| {
            let lo = rng.gen_range(-2..=1);
            let len = rng.gen_range(1..=3);
            LQ::from_dense(lo, (0..len).map(|_| Q::from_integer(rng.gen_range(-4..=4))).collect())
        })
    }

    #[test]
    fn det_laurent_matches_fraction_free_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let p = Precision::default();
        for _ in 0..15 {
            let m = random_laurent_matrix(&mut rng, 4);
            let oracle = bareiss_poly(&m);
            assert_eq!(m.det_laurent(None, &()).unwrap(), oracle);
            let approx = m.map(|x| x.to_complex(p)).det_laurent(None, &p).unwrap();
            let exact = oracle.to_complex(p);
            let err = (&approx - &exact).max_log2_abs();
            // relative error below 1e-(precision/8)
            let bound = exact.max_log2_abs() - f64::from(p.bits()) / 8.0 * std::f64::consts::LOG2_10;
            assert!(oracle.is_zero() || err < bound, "err {err} bound {bound}");
        }
    }

    #[test]
    fn buried_result_is_flagged() {
        // (X+1)(X-1) - X^2 with X = c t, |c| ~ 2^100: the true determinant
        // -1 sits far below the rounding noise of 128-bit arithmetic.
        let p = Precision::new(128).unwrap();
        let big = Complex::new(p, 0.7 * 2f64.powi(100), 0.3 * 2f64.powi(100));
        let x = LaurentPolynomial::monomial(big, 1);
        let one = LaurentPolynomial::one(&p);
        let m = Matrix::from_rows(vec![vec![&x + &one, x.clone()], vec![x.clone(), &x - &one]]).unwrap();
        assert!(matches!(
            m.det_laurent(None, &p),
            Err(AlgebraError::InterpolationIllConditioned { precision: 128 })
        ));
        let hp = Precision::new(1024).unwrap();
        let mh = m.map(|e| e.map(|c| c.with_precision(hp)));
        let d = mh.det_laurent(None, &hp).unwrap();
        assert_eq!(d.span(), Some(0));
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in prop::collection::vec(-2i64..=2, 12), cols in 1usize..=4) {
            let rows = 12 / cols;
            let m = Matrix::new(rows, cols, entries[..rows * cols].iter().map(|&x| Q::from_integer(x)).collect()).unwrap();
            let (k, im) = m.kernel_and_image_bases();
            prop_assert_eq!(k.len() + im.len(), cols);
            let p = Precision::default();
            let (kc, imc) = m.map(|x| x.to_complex(p)).kernel_and_image_bases();
            prop_assert_eq!(kc.len() + imc.len(), cols);
            prop_assert_eq!(imc.len(), im.len());
        }
    }
}
