//! Driving a Riley branch toward an ideal point while tracking `c`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Complex;
use crate::dfj::{torsion_polynomial_at, PipelineConfig};
use crate::io::{ComplexPair, SeedFile};
use crate::knots::KnotRecord;
use crate::reps::{follow_to_ideal, riley_candidate, CurveSample, Schedule, TrackerPolicy};

use super::verdict::{classify, Thresholds, Verdict};
use super::ExplorerError;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ProbeConfig {
    pub pipeline: PipelineConfig,
    pub tracker: TrackerPolicy,
    pub thresholds: Thresholds,
}

/// Telemetry for one schedule step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub index: usize,
    pub s: ComplexPair,
    pub u: ComplexPair,
    /// `I_meridian`, `I_ab`, `I_aB`.
    pub traces: [ComplexPair; 3],
    pub trace_abs: [f64; 3],
    pub c: Option<ComplexPair>,
    pub abs_c: Option<f64>,
    pub span: Option<i64>,
    /// Bits used by the tracker at this step.
    pub tracker_precision: u32,
    /// Bits at which the torsion polynomial was accepted.
    pub precision: Option<u32>,
    /// `ok` or the name of the error raised at this step.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealLimitRun {
    pub knot: String,
    pub seed: SeedFile,
    pub schedule: Schedule,
    pub precision: u32,
    pub thresholds: Thresholds,
    pub steps: Vec<StepRecord>,
    pub verdict: Verdict,
    pub failed_guards: Vec<String>,
    pub tail_variation: Option<f64>,
    pub max_tail_abs_c: Option<f64>,
    /// Monitored traces that blow up over the tail.
    pub blowup: Vec<String>,
    /// Largest monitored trace modulus over the run.
    pub max_trace: f64,
    /// Set when continuation stopped early.
    pub stalled: Option<String>,
}

impl IdealLimitRun {
    fn assemble(
        knot: &KnotRecord,
        seed: (&Complex, &Complex),
        schedule: Schedule,
        config: &ProbeConfig,
        samples: &[CurveSample],
        stalled: Option<String>,
    ) -> Self {
        let steps: Vec<StepRecord> = samples
            .par_iter()
            .map(|sample| step_record(knot, sample, &config.pipeline))
            .collect();
        let traces: Vec<[f64; 3]> = steps.iter().map(|r| r.trace_abs).collect();
        let abs_c: Vec<Option<f64>> = steps.iter().map(|r| r.abs_c).collect();
        let cls = classify(&traces, &abs_c, &config.thresholds);
        let max_trace = traces.iter().flatten().copied().fold(0.0, f64::max);
        let mut failed_guards = cls.failed_guards;
        if stalled.is_some() {
            failed_guards.insert(0, "continuation_stalled".to_string());
        }
        IdealLimitRun {
            knot: knot.name.clone(),
            seed: SeedFile::new(seed.0, seed.1),
            schedule,
            precision: seed.0.precision().min(seed.1.precision()).bits(),
            thresholds: config.thresholds,
            steps,
            verdict: if stalled.is_some() { Verdict::Inconclusive } else { cls.verdict },
            failed_guards,
            tail_variation: cls.tail_variation,
            max_tail_abs_c: cls.max_tail_abs_c,
            blowup: cls.blowup.iter().map(|&j| crate::reps::MonitoredTraces::NAMES[j].to_string()).collect(),
            max_trace,
            stalled,
        }
    }

    /// `|c|` per step, `None` where the pipeline failed.
    pub fn abs_c(&self) -> Vec<Option<f64>> {
        self.steps.iter().map(|r| r.abs_c).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run serializes")
    }

    /// Telemetry table, one row per step.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = out;
        writeln!(
            w,
            "index,u_re,u_im,s_re,s_im,abs_I_meridian,abs_I_ab,abs_I_aB,abs_c,span,tracker_precision,precision,status"
        )?;
        let opt = |x: Option<String>| x.unwrap_or_default();
        for r in &self.steps {
            writeln!(
                w,
                "{},{},{},{},{},{:e},{:e},{:e},{},{},{},{},{}",
                r.index,
                pair_f64(&r.u).0,
                pair_f64(&r.u).1,
                pair_f64(&r.s).0,
                pair_f64(&r.s).1,
                r.trace_abs[0],
                r.trace_abs[1],
                r.trace_abs[2],
                opt(r.abs_c.map(|x| format!("{x:e}"))),
                opt(r.span.map(|x| x.to_string())),
                r.tracker_precision,
                opt(r.precision.map(|x| x.to_string())),
                r.status
            )?;
        }
        w.flush()
    }
}

fn pair_f64(p: &ComplexPair) -> (f64, f64) {
    let z = p.to_complex(crate::algebra::Precision::default()).expect("written by this crate");
    (z.re_f64(), z.im_f64())
}

fn step_record(knot: &KnotRecord, sample: &CurveSample, pipeline: &PipelineConfig) -> StepRecord {
    let traces = sample.traces.values();
    let mut record = StepRecord {
        index: sample.index,
        s: sample.s().into(),
        u: sample.u().into(),
        traces: traces.map(ComplexPair::from),
        trace_abs: traces.map(|t| t.abs_f64()),
        c: None,
        abs_c: None,
        span: None,
        tracker_precision: sample.precision.bits(),
        precision: None,
        status: "ok".to_string(),
    };
    match torsion_polynomial_at(&knot.presentation, &sample.point, knot.genus, pipeline) {
        Ok(out) => {
            record.c = Some((&out.polynomial.leading).into());
            record.abs_c = Some(out.polynomial.leading.abs_f64());
            record.span = out.polynomial.span();
            record.precision = Some(out.precision.bits());
        }
        Err(e) => record.status = e.name().to_string(),
    }
    record
}

/// A probe that stopped early, with the steps completed so far.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeFailure {
    pub error: ExplorerError,
    pub partial: Option<Box<IdealLimitRun>>,
}

impl std::fmt::Display for ProbeFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.error.fmt(f)
    }
}

impl std::error::Error for ProbeFailure {}

/// Follows the branch through `seed` along `u_k = u_0 r^k` and evaluates
/// the leading coefficient at every step.
///
/// Steps are evaluated in parallel; records keep schedule order. A stalled
/// continuation is reported with the partial run attached.
pub fn ideal_limit_probe(
    knot: &KnotRecord,
    seed: (&Complex, &Complex),
    schedule: Schedule,
    config: &ProbeConfig,
) -> Result<IdealLimitRun, ProbeFailure> {
    let fail = |error: ExplorerError| ProbeFailure { error, partial: None };
    let start = riley_candidate(seed.0, seed.1, &knot.presentation).map_err(|e| fail(e.into()))?;
    if !start.is_valid(config.tracker.residual_tolerance) {
        return Err(fail(ExplorerError::InvalidSeed { residual: start.residual() }));
    }
    match follow_to_ideal(&knot.presentation, seed, schedule, &config.tracker) {
        Ok(samples) => Ok(IdealLimitRun::assemble(knot, seed, schedule, config, &samples, None)),
        Err(st) => {
            let run = IdealLimitRun::assemble(knot, seed, schedule, config, &st.samples, Some(st.error.to_string()));
            Err(ProbeFailure { error: st.error.into(), partial: Some(Box::new(run)) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Precision, Scalar};
    use crate::knots::builtin_knot;
    use crate::reps::solve_u;

    fn branch(name: &str, s: (f64, f64)) -> (KnotRecord, Complex, Complex) {
        let k = builtin_knot(name).unwrap();
        let s = Complex::new(Precision::default(), s.0, s.1);
        let u = solve_u(&s, &k.presentation, 1e-10).unwrap().remove(0);
        (k, s, u)
    }

    #[test]
    fn figure_eight_stays_at_one() {
        let (k, s, u) = branch("4_1", (0.8, 0.6));
        let run = ideal_limit_probe(&k, (&s, &u), Schedule { ratio: 2.0, steps: 24 }, &ProbeConfig::default()).unwrap();
        assert_eq!(run.steps.len(), 25);
        for r in &run.steps {
            assert_eq!(r.status, "ok");
            let c = r.c.as_ref().unwrap().to_complex(Precision::default()).unwrap();
            assert!((c - &Complex::one(&Precision::default())).abs_f64() < 1e-6);
        }
        assert!(run.max_trace > 1e6);
        assert_eq!(run.verdict, Verdict::Bounded);
    }

    #[test]
    fn rigged_coefficient_diverges() {
        // Same path, with |c| replaced by |u_k|.
        let (k, s, u) = branch("4_1", (0.8, 0.6));
        let run = ideal_limit_probe(&k, (&s, &u), Schedule { ratio: 16.0, steps: 8 }, &ProbeConfig::default()).unwrap();
        let traces: Vec<[f64; 3]> = run.steps.iter().map(|r| r.trace_abs).collect();
        let rigged: Vec<Option<f64>> = run.steps.iter().map(|r| Some(pair_f64(&r.u).0.hypot(pair_f64(&r.u).1))).collect();
        assert_eq!(classify(&traces, &rigged, &Thresholds::default()).verdict, Verdict::Divergent);
    }

    #[test]
    fn off_curve_seed_is_rejected() {
        let (k, s, u) = branch("5_2", (0.8, 0.6));
        let bad = u.clone() + &Complex::new(Precision::default(), 1e-3, 0.0);
        let err = ideal_limit_probe(&k, (&s, &bad), Schedule::default(), &ProbeConfig::default()).unwrap_err();
        assert_eq!(err.error.name(), "InvalidSeed");
    }

    #[test]
    fn output_is_deterministic() {
        let (k, s, u) = branch("5_2", (0.7, 0.9));
        let schedule = Schedule { ratio: 2.0, steps: 6 };
        let a = ideal_limit_probe(&k, (&s, &u), schedule, &ProbeConfig::default()).unwrap();
        let b = ideal_limit_probe(&k, (&s, &u), schedule, &ProbeConfig::default()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let (mut x, mut y) = (Vec::new(), Vec::new());
        a.write_csv(&mut x).unwrap();
        b.write_csv(&mut y).unwrap();
        assert_eq!(x, y);
        let back: IdealLimitRun = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }
}
