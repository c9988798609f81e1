use std::path::PathBuf;

use torsionlab::algebra::{Precision, DEFAULT_PRECISION};
use torsionlab::dfj::{NormalizeTolerance, PipelineConfig};
use torsionlab::explorer::{ProbeConfig, Thresholds};
use torsionlab::reps::{Schedule, TrackerPolicy, RESIDUAL_TOLERANCE};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    pub residual: f64,
    pub symmetry: f64,
    pub zero: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { residual: RESIDUAL_TOLERANCE, symmetry: 1e-8, zero: 1e-8 }
    }
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub precision: Precision,
    pub tolerances: Tolerances,
    pub schedule: Schedule,
    pub thresholds: Thresholds,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: Precision::new(DEFAULT_PRECISION).expect("default precision is valid"),
            tolerances: Tolerances::default(),
            schedule: Schedule::default(),
            thresholds: Thresholds::default(),
            out: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let t = &self.tolerances;
        for (name, v) in [("residual", t.residual), ("symmetry", t.symmetry), ("zero", t.zero)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::input("InvalidTolerance", format!("{name} tolerance must be positive, got {v}")));
            }
        }
        let r = self.schedule.ratio;
        if !(r > 0.0 && r.is_finite() && r != 1.0) {
            return Err(CliError::input("InvalidSchedule", format!("ratio must be positive and different from 1, got {r}")));
        }
        Ok(())
    }

    pub fn pipeline(&self) -> PipelineConfig {
        PipelineConfig {
            tolerance: NormalizeTolerance { division: self.tolerances.zero, symmetry: self.tolerances.symmetry },
            ..PipelineConfig::default()
        }
    }

    pub fn probe(&self) -> ProbeConfig {
        ProbeConfig {
            pipeline: self.pipeline(),
            tracker: TrackerPolicy { residual_tolerance: self.tolerances.residual, ..TrackerPolicy::default() },
            thresholds: self.thresholds,
        }
    }
}
