//! Predictor-corrector path following along `u_k = u_0 r^k`.

use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::algebra::{Complex, Precision, Scalar, MAX_PRECISION};
use crate::knots::{GroupPresentation, Word};

use super::riley::RileySystem;
use super::{riley_candidate, Jet, RepresentationPoint, RepsError, RESIDUAL_TOLERANCE};

/// Equations `F(s, u) = 0` cutting out a curve, with first derivatives.
pub trait CurveSystem {
    fn equations(&self, s: &Complex, u: &Complex) -> Vec<Jet>;

    /// Final acceptance of a corrected point.
    fn accept(&self, _s: &Complex, _u: &Complex, _tolerance: f64) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    S,
    U,
}

/// Gauss-Newton iteration in one variable on the overdetermined system.
/// Returns the converged value, or `None` if the iteration stalls or ends
/// away from the curve.
pub fn gauss_newton<C: CurveSystem + ?Sized>(
    system: &C,
    s: &Complex,
    u: &Complex,
    var: Variable,
    max_iter: usize,
) -> Option<Complex> {
    let prec = s.precision().min(u.precision());
    let bits = f64::from(prec.bits());
    let mut x = match var {
        Variable::S => s.with_precision(prec),
        Variable::U => u.with_precision(prec),
    };
    for _ in 0..max_iter {
        let eqs = match var {
            Variable::S => system.equations(&x, u),
            Variable::U => system.equations(s, &x),
        };
        let mut num = Complex::zero(&prec);
        let mut den = Complex::zero(&prec);
        for e in &eqs {
            let d = match var {
                Variable::S => &e.ds,
                Variable::U => &e.du,
            };
            num += &(d.conj() * &e.v);
            den += &(d.conj() * d);
        }
        let step = num.checked_div(&den).ok()?;
        x = x - &step;
        if step.is_zero() || step.log2_abs() < x.log2_abs() - (bits - 16.0) {
            // Converged; make sure this is a zero and not a least-squares
            // minimum of an inconsistent system.
            let eqs = match var {
                Variable::S => system.equations(&x, u),
                Variable::U => system.equations(s, &x),
            };
            let worst = eqs.iter().map(|e| e.v.log2_abs()).fold(f64::NEG_INFINITY, f64::max);
            let scale = eqs
                .iter()
                .map(|e| {
                    let d = match var {
                        Variable::S => &e.ds,
                        Variable::U => &e.du,
                    };
                    d.log2_abs() + x.log2_abs().max(0.0)
                })
                .fold(0.0, f64::max);
            return (worst < scale - bits / 2.0).then_some(x);
        }
    }
    None
}

/// `d log s / d log u` along the curve.
fn log_slope<C: CurveSystem + ?Sized>(system: &C, s: &Complex, u: &Complex) -> Option<Complex> {
    let prec = s.precision();
    let mut ss = Complex::zero(&prec);
    let mut su = Complex::zero(&prec);
    for e in system.equations(s, u) {
        let c = e.ds.conj();
        su += &(c.clone() * &e.du);
        ss += &(c * &e.ds);
    }
    let ds_du = -su.checked_div(&ss).ok()?;
    Some(ds_du * u * &s.inv().ok()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub ratio: f64,
    pub steps: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { ratio: 2.0, steps: 40 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrackerPolicy {
    pub residual_tolerance: f64,
    pub max_precision: u32,
    /// Smallest substep, as a fraction of one schedule step, before the
    /// precision is raised.
    pub min_substep: f64,
    /// Radius around `s = +-1` inside which steps are halved.
    pub parabolic_radius: f64,
    /// Largest corrector move relative to the predicted displacement.
    pub corrector_ratio: f64,
}

impl Default for TrackerPolicy {
    fn default() -> Self {
        TrackerPolicy {
            residual_tolerance: RESIDUAL_TOLERANCE,
            max_precision: MAX_PRECISION,
            min_substep: 1.0 / 1024.0,
            parabolic_radius: 0.05,
            corrector_ratio: 0.25,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathPoint {
    pub s: Complex,
    pub u: Complex,
}

/// Path that stopped early, with everything emitted before the failure.
#[derive(Clone, Debug, PartialEq)]
pub struct Stalled<P> {
    pub error: RepsError,
    pub samples: Vec<P>,
}

/// `u_0 r^x`.
fn u_at(u0: &Complex, ratio: f64, x: f64, prec: Precision) -> Complex {
    let r = Float::with_val(prec.bits(), ratio);
    let f = r.pow(Float::with_val(prec.bits(), x));
    let scale = Complex::from_rug(rug::Complex::with_val(prec.bits(), (f, 0)));
    u0.with_precision(prec) * &scale
}

/// Tracks the curve from `(s0, u0)` through `u_k = u0 r^k`, `k = 0..=steps`.
///
/// Each schedule step is covered by substeps in `log u`: an Euler predictor
/// in `(log s, log u)` followed by Gauss-Newton in `s`. A substep is retried
/// at half length when the corrector fails, moves too far from the
/// prediction, or the prediction lands near `s = +-1`; below the minimum
/// substep the working precision doubles. Precision also doubles when a
/// corrected point misses the residual tolerance.
pub fn follow_path<C: CurveSystem + ?Sized>(
    system: &C,
    s0: &Complex,
    u0: &Complex,
    schedule: Schedule,
    policy: &TrackerPolicy,
) -> Result<(Vec<PathPoint>, Vec<Precision>), Stalled<(PathPoint, Precision)>> {
    let mut prec = s0.precision().min(u0.precision());
    let stalled = |reason: String, done: &[PathPoint], precs: &[Precision]| Stalled {
        error: RepsError::ContinuationStalled { last_good: done.len().checked_sub(1), reason },
        samples: done.iter().cloned().zip(precs.iter().copied()).collect(),
    };
    if !(schedule.ratio > 0.0 && schedule.ratio != 1.0 && schedule.ratio.is_finite()) {
        return Err(stalled("ratio must be positive and different from 1".into(), &[], &[]));
    }
    let ln_r = schedule.ratio.ln();

    // Settle the seed.
    let mut s = loop {
        let u = u0.with_precision(prec);
        if let Some(s) = gauss_newton(system, &s0.with_precision(prec), &u, Variable::S, 60) {
            if system.accept(&s, &u, policy.residual_tolerance) {
                break s;
            }
        }
        match prec.escalate().filter(|p| p.bits() <= policy.max_precision) {
            Some(p) => prec = p,
            None => return Err(stalled("seed is not on the curve".into(), &[], &[])),
        }
    };
    let mut points = vec![PathPoint { s: s.clone(), u: u0.with_precision(prec) }];
    let mut precs = vec![prec];
    let mut h = 1.0f64;

    for k in 0..schedule.steps {
        let mut tau = 0.0f64;
        let mut u = u_at(u0, schedule.ratio, k as f64, prec);
        while tau < 1.0 {
            let step = h.min(1.0 - tau);
            let u_next = u_at(u0, schedule.ratio, k as f64 + tau + step, prec);
            let prediction = log_slope(system, &s, &u).map(|m| {
                let growth = (m * &Complex::new(prec, step * ln_r, 0.0)).exp();
                s.clone() * &growth
            });
            let mut escalate = false;
            let mut accepted = None;
            if let Some(pred) = prediction {
                let near_parabolic = [1.0, -1.0].iter().any(|&e| {
                    (pred.clone() - &Complex::new(prec, e, 0.0)).abs_f64() < policy.parabolic_radius
                });
                if !(near_parabolic && step > policy.min_substep) {
                    if let Some(c) = gauss_newton(system, &pred, &u_next, Variable::S, 40) {
                        let moved = (c.clone() - &pred).abs_f64();
                        let predicted = (pred.clone() - &s).abs_f64();
                        if moved <= policy.corrector_ratio * predicted + 1e-12 * c.abs_f64() {
                            if system.accept(&c, &u_next, policy.residual_tolerance) {
                                accepted = Some(c);
                            } else {
                                escalate = true;
                            }
                        }
                    }
                }
            }
            match accepted {
                Some(c) => {
                    s = c;
                    u = u_next;
                    tau += step;
                    h = (2.0 * step).min(1.0);
                }
                None if !escalate && step > policy.min_substep => h = step / 2.0,
                None => match prec.escalate().filter(|p| p.bits() <= policy.max_precision) {
                    Some(p) => {
                        prec = p;
                        s = s.with_precision(prec);
                        u = u_at(u0, schedule.ratio, k as f64 + tau, prec);
                        h = 1.0;
                        // Re-settle the current point at the new precision.
                        if let Some(c) = gauss_newton(system, &s, &u, Variable::S, 60) {
                            s = c;
                        }
                    }
                    None => {
                        return Err(stalled(format!("step {} at precision {}", k + 1, prec.bits()), &points, &precs));
                    }
                },
            }
        }
        points.push(PathPoint { s: s.clone(), u: u_at(u0, schedule.ratio, (k + 1) as f64, prec) });
        precs.push(prec);
    }
    Ok((points, precs))
}

/// Traces watched for blow-up near an ideal point.
#[derive(Clone, Debug, PartialEq)]
pub struct MonitoredTraces {
    pub meridian: Complex,
    pub ab: Complex,
    pub a_b_inv: Complex,
}

impl MonitoredTraces {
    pub const NAMES: [&'static str; 3] = ["I_meridian", "I_ab", "I_aB"];

    pub fn of(point: &RepresentationPoint, presentation: &GroupPresentation) -> Self {
        MonitoredTraces {
            meridian: point.trace(presentation.meridian()),
            ab: point.trace(&Word::new([1, 2])),
            a_b_inv: point.trace(&Word::new([1, -2])),
        }
    }

    pub fn values(&self) -> [&Complex; 3] {
        [&self.meridian, &self.ab, &self.a_b_inv]
    }

    pub fn max_abs(&self) -> f64 {
        self.values().iter().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }
}

/// A point on a representation curve with its monitored traces.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSample {
    /// Schedule index `k` of `u_k = u_0 r^k`.
    pub index: usize,
    pub point: RepresentationPoint,
    pub traces: MonitoredTraces,
    pub precision: Precision,
}

impl CurveSample {
    pub fn new(index: usize, point: RepresentationPoint, presentation: &GroupPresentation) -> Self {
        let traces = MonitoredTraces::of(&point, presentation);
        let precision = point.precision();
        CurveSample { index, point, traces, precision }
    }

    pub fn s(&self) -> &Complex {
        &self.point.riley().expect("Riley point").0
    }

    pub fn u(&self) -> &Complex {
        &self.point.riley().expect("Riley point").1
    }
}

/// Follows a Riley branch of a two-generator knot group toward large `|u|`.
pub fn follow_to_ideal(
    presentation: &GroupPresentation,
    seed: (&Complex, &Complex),
    schedule: Schedule,
    policy: &TrackerPolicy,
) -> Result<Vec<CurveSample>, Stalled<CurveSample>> {
    let system = RileySystem::new(presentation).map_err(|error| Stalled { error, samples: Vec::new() })?;
    let to_sample = |i: usize, p: &PathPoint| {
        let point = riley_candidate(&p.s, &p.u, presentation).expect("s stays nonzero along the path");
        CurveSample::new(i, point, presentation)
    };
    match follow_path(&system, seed.0, seed.1, schedule, policy) {
        Ok((points, _)) => Ok(points.iter().enumerate().map(|(i, p)| to_sample(i, p)).collect()),
        Err(st) => Err(Stalled {
            error: st.error,
            samples: st.samples.iter().enumerate().map(|(i, (p, _))| to_sample(i, p)).collect(),
        }),
    }
}

/// Names of the monitored traces whose modulus exceeds `threshold` at the
/// last sample and grew strictly over the last `window` samples.
pub fn blowing_up(samples: &[CurveSample], threshold: f64, window: usize) -> Vec<&'static str> {
    if samples.len() < window || window == 0 {
        return Vec::new();
    }
    let tail = &samples[samples.len() - window..];
    (0..3)
        .filter(|&j| {
            let mags: Vec<f64> = tail.iter().map(|c| c.traces.values()[j].abs_f64()).collect();
            mags[window - 1] > threshold && mags.windows(2).all(|w| w[1] > w[0])
        })
        .map(|j| MonitoredTraces::NAMES[j])
        .collect()
}
