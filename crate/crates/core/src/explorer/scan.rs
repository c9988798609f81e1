//! Bulk evaluation of the torsion polynomial over sampled curve points.

use rayon::prelude::*;

use crate::algebra::{Complex, Precision, Scalar};
use crate::dfj::{torsion_polynomial_at, DfjError, PipelineConfig, PipelineOutput};
use crate::knots::KnotRecord;
use crate::reps::{riley_candidate, sample_irreducible_points, solve_u, MonitoredTraces, RepsError};

/// One branch over one grid point, or the failure that prevented it.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    /// Position of `s` in the input grid.
    pub index: usize,
    pub s: Complex,
    pub u: Option<Complex>,
    pub traces: Option<MonitoredTraces>,
    pub output: Option<PipelineOutput>,
    /// `ok` or an error name.
    pub status: String,
}

impl ScanRow {
    fn failed(index: usize, s: &Complex, u: Option<&Complex>, status: &str) -> Self {
        ScanRow { index, s: s.clone(), u: u.cloned(), traces: None, output: None, status: status.to_string() }
    }
}

/// `n` points on the unit circle at angles `2 pi (k + 1/2) / n`.
pub fn unit_circle_grid(n: usize, prec: Precision) -> Vec<Complex> {
    (0..n)
        .map(|k| Complex::root_of_unity(2 * k as i64 + 1, 2 * n as i64, prec))
        .collect()
}

fn scan_point(knot: &KnotRecord, index: usize, s: &Complex, config: &PipelineConfig, tolerance: f64) -> Vec<ScanRow> {
    let roots = match solve_u(s, &knot.presentation, tolerance) {
        Ok(r) if r.is_empty() => return vec![ScanRow::failed(index, s, None, "NoConvergence")],
        Ok(r) => r,
        Err(e) => return vec![ScanRow::failed(index, s, None, e.name())],
    };
    roots
        .iter()
        .map(|u| {
            let point = match riley_candidate(s, u, &knot.presentation) {
                Ok(p) => p,
                Err(e) => return ScanRow::failed(index, s, Some(u), e.name()),
            };
            let traces = Some(MonitoredTraces::of(&point, &knot.presentation));
            match torsion_polynomial_at(&knot.presentation, &point, knot.genus, config) {
                Ok(out) => ScanRow { index, s: s.clone(), u: Some(u.clone()), traces, output: Some(out), status: "ok".into() },
                Err(e) => ScanRow { traces, ..ScanRow::failed(index, s, Some(u), e.name()) },
            }
        })
        .collect()
}

/// Every Riley branch over every grid point, in grid order. Failures are
/// recorded per row; `s = 0` yields a `DegenerateParameter` row.
pub fn curve_scan(knot: &KnotRecord, grid: &[Complex], config: &PipelineConfig, tolerance: f64) -> Vec<ScanRow> {
    grid.par_iter()
        .enumerate()
        .map(|(i, s)| {
            if s.is_zero() {
                let e = RepsError::DegenerateParameter("s = 0".into());
                return vec![ScanRow::failed(i, s, None, e.name())];
            }
            scan_point(knot, i, s, config, tolerance)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Torsion polynomials at `count` seeded irreducible points, in sample order.
pub fn sample_torsion_polynomials(
    knot: &KnotRecord,
    count: usize,
    seed: u64,
    prec: Precision,
    config: &PipelineConfig,
    tolerance: f64,
) -> Result<Vec<Result<PipelineOutput, DfjError>>, RepsError> {
    let points = sample_irreducible_points(&knot.presentation, count, seed, prec, tolerance)?;
    Ok(points
        .par_iter()
        .map(|p| torsion_polynomial_at(&knot.presentation, p, knot.genus, config))
        .collect())
}
