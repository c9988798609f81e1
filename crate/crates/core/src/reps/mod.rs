//! SL(2, C) representations of knot groups: Riley points, trace functions
//! and continuation toward ideal points.

mod continuation;
mod point;
mod riley;
mod sl2;

pub use continuation::{
    blowing_up, follow_path, follow_to_ideal, gauss_newton, CurveSample, CurveSystem, MonitoredTraces, PathPoint,
    Schedule, Stalled, TrackerPolicy, Variable,
};
pub use point::{
    riley_candidate, trace_function, LinearRep, RepresentationPoint, IRREDUCIBILITY_TOLERANCE, RESIDUAL_TOLERANCE,
};
pub use riley::{polish, sample_irreducible_points, solve_u, RileySystem};
pub use sl2::{Jet, Mat2, Sl2};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepsError {
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("Newton iteration did not converge")]
    NoConvergence,
    #[error("continuation stalled after sample {last_good:?}: {reason}")]
    ContinuationStalled { last_good: Option<usize>, reason: String },
}

impl RepsError {
    pub fn name(&self) -> &'static str {
        match self {
            RepsError::DegenerateParameter(_) => "DegenerateParameter",
            RepsError::UnsupportedPresentation(_) => "UnsupportedPresentation",
            RepsError::NoConvergence => "NoConvergence",
            RepsError::ContinuationStalled { .. } => "ContinuationStalled",
        }
    }
}
