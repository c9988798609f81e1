//! Boundedness verdicts for sequences of leading coefficients.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Bounded,
    Divergent,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Bounded => "BOUNDED",
            Verdict::Divergent => "DIVERGENT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// A monitored trace above this modulus witnesses an ideal point.
    pub trace_blowup: f64,
    /// Samples over which the blowing-up trace must grow strictly.
    pub monotone_window: usize,
    /// Steps in the tail used for the variation statistic.
    pub tail_window: usize,
    /// Bound on `(max - min) / (1 + max)` of `|c|` over the tail.
    pub tail_variation: f64,
    pub divergence_factor: f64,
    pub divergence_steps: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            trace_blowup: 1e6,
            monotone_window: 5,
            tail_window: 5,
            tail_variation: 1e-3,
            divergence_factor: 10.0,
            divergence_steps: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Guards that kept the run from a definite verdict.
    pub failed_guards: Vec<String>,
    /// `max - min` of `|c|` over the tail, when every tail step has a value.
    pub tail_variation: Option<f64>,
    pub max_tail_abs_c: Option<f64>,
    /// Monitored traces (by index) that blow up.
    pub blowup: Vec<usize>,
}

/// Classifies a run from the moduli of its three monitored traces and of
/// `c` at each step (`None` where the pipeline failed).
pub fn classify(traces: &[[f64; 3]], abs_c: &[Option<f64>], th: &Thresholds) -> Classification {
    let n = traces.len().min(abs_c.len());
    let blowup: Vec<usize> = if n >= th.monotone_window && th.monotone_window > 0 {
        let tail = &traces[n - th.monotone_window..n];
        (0..3)
            .filter(|&j| tail[tail.len() - 1][j] > th.trace_blowup && tail.windows(2).all(|w| w[1][j] > w[0][j]))
            .collect()
    } else {
        Vec::new()
    };

    let tail: Option<Vec<f64>> = (n >= th.tail_window && th.tail_window > 0)
        .then(|| abs_c[n - th.tail_window..n].iter().copied().collect::<Option<Vec<f64>>>())
        .flatten();
    let (tail_variation, max_tail) = match &tail {
        Some(t) => {
            let max = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = t.iter().copied().fold(f64::INFINITY, f64::min);
            (Some(max - min), Some(max))
        }
        None => (None, None),
    };

    let k = th.divergence_steps;
    let divergent = k > 0
        && n > k
        && abs_c[n - k - 1..n]
            .windows(2)
            .all(|w| matches!((w[0], w[1]), (Some(a), Some(b)) if a > 0.0 && b >= th.divergence_factor * a));
    if divergent {
        return Classification {
            verdict: Verdict::Divergent,
            failed_guards: Vec::new(),
            tail_variation,
            max_tail_abs_c: max_tail,
            blowup,
        };
    }

    let mut failed = Vec::new();
    if blowup.is_empty() {
        failed.push("trace_blowup".to_string());
    }
    match (tail_variation, max_tail) {
        (Some(v), Some(m)) if v < th.tail_variation * (1.0 + m) => {}
        (Some(_), _) => failed.push("tail_variation".to_string()),
        (None, _) => failed.push("tail_values_missing".to_string()),
    }
    let verdict = if failed.is_empty() { Verdict::Bounded } else { Verdict::Inconclusive };
    Classification { verdict, failed_guards: failed, tail_variation, max_tail_abs_c: max_tail, blowup }
}
