//! Complex roots of univariate polynomials (Aberth–Ehrlich iteration).

use super::scalar::{Complex, Precision, Scalar};
use super::AlgebraError;

/// `(p(z), p'(z))` for ascending coefficients.
pub fn eval_with_derivative(coeffs: &[Complex], z: &Complex) -> (Complex, Complex) {
    let prec = z.precision();
    let mut p = Complex::zero(&prec);
    let mut dp = Complex::zero(&prec);
    for c in coeffs.iter().rev() {
        dp = dp * z + &p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots (with multiplicity) of `sum coeffs[k] z^k`.
///
/// Trailing zero coefficients are ignored; leading zeros contribute exact
/// zero roots. Fails with `DivisionByZero` for the zero polynomial.
pub fn polynomial_roots(coeffs: &[Complex], prec: Precision) -> Result<Vec<Complex>, AlgebraError> {
    let coeffs: Vec<Complex> = coeffs.iter().map(|c| c.with_precision(prec)).collect();
    let Some(top) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return Err(AlgebraError::DivisionByZero);
    };
    let bottom = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut roots = vec![Complex::zero(&prec); bottom];
    let poly = &coeffs[bottom..=top];
    let n = poly.len() - 1;
    if n == 0 {
        return Ok(roots);
    }

    // Starting points on a circle whose radius follows the coefficient sizes.
    let lead = poly[n].log2_abs();
    let radius_log2 = (0..n)
        .filter(|&k| !poly[k].is_zero())
        .map(|k| (poly[k].log2_abs() - lead) / (n - k) as f64)
        .fold(f64::NEG_INFINITY, f64::max);
    let radius = radius_log2.exp2().clamp(1e-300, 1e300);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex::new(prec, radius * angle.cos(), radius * angle.sin())
        })
        .collect();

    let tol = -(f64::from(prec.bits()) - 8.0);
    let max_iter = 200 + prec.bits() as usize / 4;
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(poly, &z[i]);
            if p.is_zero() {
                continue;
            }
            let Ok(ratio) = p.checked_div(&dp) else {
                // Critical point: nudge off it.
                z[i] = z[i].clone() * &Complex::new(prec, 1.0, 1e-3);
                converged = false;
                continue;
            };
            let mut repulsion = Complex::zero(&prec);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    if let Ok(r) = (z[i].clone() - zj).inv() {
                        repulsion += &r;
                    }
                }
            }
            let denom = Complex::one(&prec) - ratio.clone() * &repulsion;
            let step = ratio.checked_div(&denom).unwrap_or(ratio);
            if step.log2_abs() > tol + z[i].log2_abs().max(0.0) {
                converged = false;
            }
            z[i] = z[i].clone() - &step;
        }
        if converged {
            break;
        }
    }
    roots.extend(z);
    Ok(roots)
}

/// Newton refinement of an approximate root; stops when the step is below
/// the working precision or after `max_iter` steps.
pub fn newton_polish(coeffs: &[Complex], z0: &Complex, max_iter: usize) -> Complex {
    let mut z = z0.clone();
    let tol = -(f64::from(z.precision().bits()) - 4.0);
    for _ in 0..max_iter {
        let (p, dp) = eval_with_derivative(coeffs, &z);
        let Ok(step) = p.checked_div(&dp) else { break };
        z = z - &step;
        if step.log2_abs() < tol + z.log2_abs().max(0.0) {
            break;
        }
    }
    z
}
