//! Ideal-limit probes and bulk curve scans.

mod probe;
mod scan;
mod verdict;

pub use probe::{ideal_limit_probe, IdealLimitRun, ProbeConfig, ProbeFailure, StepRecord};
pub use scan::{curve_scan, sample_torsion_polynomials, unit_circle_grid, ScanRow};
pub use verdict::{classify, Classification, Thresholds, Verdict};

use crate::dfj::DfjError;
use crate::reps::RepsError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExplorerError {
    #[error("seed is off the curve (residual {residual:e})")]
    InvalidSeed { residual: f64 },
    #[error(transparent)]
    Reps(#[from] RepsError),
    #[error(transparent)]
    Dfj(#[from] DfjError),
}

impl ExplorerError {
    pub fn name(&self) -> &'static str {
        match self {
            ExplorerError::InvalidSeed { .. } => "InvalidSeed",
            ExplorerError::Reps(e) => e.name(),
            ExplorerError::Dfj(e) => e.name(),
        }
    }
}
