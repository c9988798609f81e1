//! Symmetric representatives of torsion values and their invariants.

use crate::algebra::{Complex, LaurentPolynomial, Precision, Scalar};
use crate::torsion::TorsionValue;

use super::DfjError;

/// Tolerances used by [`normalize`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizeTolerance {
    /// Bound on `max |remainder| / max |numerator|`.
    pub division: f64,
    /// Bound on `max_k |p_k - p_-k| / max_k |p_k|`.
    pub symmetry: f64,
}

impl Default for NormalizeTolerance {
    fn default() -> Self {
        NormalizeTolerance { division: 1e-8, symmetry: 1e-8 }
    }
}

/// Centered Laurent polynomial `p` with `p(1/t) = p(t)`, and its
/// coefficient at `t^(2g-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionPolynomial {
    pub poly: LaurentPolynomial<Complex>,
    pub genus: u32,
    pub leading: Complex,
    /// Twisted homology is nonzero and the polynomial vanishes.
    pub zero: bool,
}

impl TorsionPolynomial {
    pub fn zero(genus: u32, prec: Precision) -> Self {
        TorsionPolynomial { poly: LaurentPolynomial::zero(), genus, leading: Complex::zero(&prec), zero: true }
    }

    pub fn span(&self) -> Option<i64> {
        self.poly.span()
    }

    /// Full span `4g - 2`.
    pub fn full_span(&self) -> i64 {
        4 * i64::from(self.genus) - 2
    }

    /// `max_k |p_k - p_-k| / max_k |p_k|`.
    pub fn symmetry_residual(&self) -> f64 {
        symmetry_residual(&self.poly)
    }
}

fn symmetry_residual(p: &LaurentPolynomial<Complex>) -> f64 {
    let scale = p.max_log2_abs();
    if scale == f64::NEG_INFINITY {
        return 0.0;
    }
    let worst = p
        .terms()
        .map(|(k, c)| match p.coeff(-k) {
            Some(m) => (c.clone() - m).log2_abs(),
            None => c.log2_abs(),
        })
        .fold(f64::NEG_INFINITY, f64::max);
    (worst - scale).exp2()
}

/// Clears the denominator, centers the result at degree 0 and fixes the
/// sign so the top coefficient has argument in `[0, pi)`.
pub fn normalize(v: &TorsionValue<Complex>, genus: u32, tol: &NormalizeTolerance) -> Result<TorsionPolynomial, DfjError> {
    let prec = v.denominator.context().unwrap_or_default();
    if genus == 0 {
        return Err(DfjError::InvalidGenus);
    }
    if v.is_zero() {
        return Ok(TorsionPolynomial::zero(genus, prec));
    }
    let (q, r) = v.numerator.div_rem(&v.denominator).map_err(|e| DfjError::Torsion(e.into()))?;
    let ratio = (r.max_log2_abs() - v.numerator.max_log2_abs()).exp2();
    if ratio >= tol.division {
        return Err(DfjError::InexactDivision { remainder: ratio });
    }
    let scale = q.max_log2_abs();
    let q = q.trimmed(|c| c.is_negligible(scale));
    let (Some(lo), Some(hi)) = (q.low_degree(), q.high_degree()) else {
        return Ok(TorsionPolynomial::zero(genus, prec));
    };
    if (hi - lo) % 2 != 0 {
        return Err(DfjError::OddSpan { span: hi - lo });
    }
    let mut p = q.shift(-(lo + hi) / 2);
    let top = p.leading().expect("nonzero").clone();
    let im_tiny = top.im_f64().abs() <= tol.symmetry * top.abs_f64();
    let flip = if im_tiny { top.re_f64() < 0.0 } else { top.im_f64() < 0.0 };
    if flip {
        p = -p;
    }
    let residual = symmetry_residual(&p);
    if residual >= tol.symmetry {
        return Err(DfjError::AsymmetricResult { residual });
    }
    let c_deg = 2 * i64::from(genus) - 1;
    let leading = p.coeff(c_deg).cloned().unwrap_or_else(|| Complex::zero(&prec));
    Ok(TorsionPolynomial { poly: p, genus, leading, zero: false })
}

/// Coefficient of `t^(2g-1)`; zero when the span is below `4g - 2`.
pub fn leading_coefficient(t: &TorsionPolynomial) -> Complex {
    t.leading.clone()
}

/// Smallest `g` with `4g - 2 >= span`.
pub fn genus_lower_bound(t: &TorsionPolynomial) -> Result<u32, DfjError> {
    let span = t.span().ok_or(DfjError::ZeroPolynomial)?;
    Ok(((span + 2 + 3) / 4) as u32)
}

/// Necessary condition for fiberedness over a set of samples.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberednessReport {
    pub consistent_with_fibered: bool,
    pub max_abs_c_minus_1: f64,
    pub min_span: i64,
    pub max_span: i64,
    pub samples: usize,
}

/// Every nonzero sample must have full span `4g - 2` and `|c - 1| < 1e-6`.
pub fn fiberedness_evidence(samples: &[TorsionPolynomial]) -> Result<FiberednessReport, DfjError> {
    let nonzero: Vec<&TorsionPolynomial> = samples.iter().filter(|t| !t.zero).collect();
    if nonzero.is_empty() {
        return Err(DfjError::NoSamples);
    }
    let mut report = FiberednessReport {
        consistent_with_fibered: true,
        max_abs_c_minus_1: 0.0,
        min_span: i64::MAX,
        max_span: i64::MIN,
        samples: nonzero.len(),
    };
    for t in nonzero {
        let span = t.span().unwrap_or(0);
        let one = Complex::one(&t.leading.precision());
        let dev = (t.leading.clone() - &one).abs_f64();
        report.min_span = report.min_span.min(span);
        report.max_span = report.max_span.max(span);
        report.max_abs_c_minus_1 = report.max_abs_c_minus_1.max(dev);
        if span != t.full_span() || !(dev < 1e-6) {
            report.consistent_with_fibered = false;
        }
    }
    Ok(report)
}
