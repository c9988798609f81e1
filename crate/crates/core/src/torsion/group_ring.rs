//! Integral group ring of a free group and Fox derivatives.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{LaurentPolynomial, Matrix, Scalar};
use crate::knots::{GroupPresentation, Word};
use crate::reps::LinearRep;

/// Finite formal sum of reduced words with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_terms([(w, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, i64)>) -> Self {
        let mut out = BTreeMap::new();
        for (w, c) in terms {
            *out.entry(w).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        GroupRingElement { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Image under `alpha (x) rho`: `sum c t^alpha(w) rho(w)`.
    pub fn twisted_image<T: Scalar>(
        &self,
        presentation: &GroupPresentation,
        rep: &LinearRep<T>,
    ) -> Matrix<LaurentPolynomial<T>> {
        let n = rep.dim();
        let ctx = rep.context();
        let mut acc: Vec<Vec<(i64, T)>> = vec![Vec::new(); n * n];
        for (w, c) in self.terms() {
            let e = presentation.abelianize(w);
            let m = rep.image(w);
            let c = T::from_i64(c, ctx);
            for i in 0..n {
                for j in 0..n {
                    acc[i * n + j].push((e, c.clone() * m.get(i, j)));
                }
            }
        }
        let mut cells = acc.into_iter();
        Matrix::from_fn(n, n, |_, _| LaurentPolynomial::from_terms(cells.next().expect("n*n cells")))
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        GroupRingElement::from_terms(self.terms().chain(rhs.terms()).map(|(w, c)| (w.clone(), c)))
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement::from_terms(self.terms().map(|(w, c)| (w.clone(), -c)))
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        GroupRingElement::from_terms(
            self.terms().flat_map(|(u, a)| rhs.terms().map(move |(v, b)| (u * v, a * b))),
        )
    }
}

/// `d w / d x_gen` (0-based generator index) by the product rule.
pub fn fox_derivative(w: &Word, gen: usize) -> GroupRingElement {
    let x = gen as i32 + 1;
    let letters = w.letters();
    GroupRingElement::from_terms(letters.iter().enumerate().filter_map(|(i, &l)| {
        if l == x {
            Some((w.prefix(i), 1))
        } else if l == -x {
            Some((w.prefix(i + 1), -1))
        } else {
            None
        }
    }))
}

/// Fox Jacobian `(d r_i / d x_j)`, rows indexed by relators.
pub fn fox_jacobian(presentation: &GroupPresentation) -> Vec<Vec<GroupRingElement>> {
    presentation
        .relators()
        .iter()
        .map(|r| (0..presentation.generator_count()).map(|j| fox_derivative(r, j)).collect())
        .collect()
}
