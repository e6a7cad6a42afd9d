//! Majorana propagation: Trotter sweeps interleaved with degree truncation.

mod bounds;
mod engine;
mod trace;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bounds::{
    apriori_error_bound, commutator_bound, optimal_time_step, split_horizon, step_count, trotter_bound_general,
    trotter_bound_improved, FALLBACK_TIME_STEP,
};
pub use engine::{apply_group, mp_propagate, mp_propagate_observed, trotter_sweep, Propagator};
pub use trace::{PropagationTrace, StepRecord, TRACE_CSV_HEADER};

/// Where the degree cut is applied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationMode {
    /// After every single term rotation; pruning after every group.
    #[default]
    PerRotation,
    /// Once after each full sweep, followed by pruning.
    PerSweep,
}

impl std::str::FromStr for TruncationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per_rotation" => Ok(Self::PerRotation),
            "per_sweep" => Ok(Self::PerSweep),
            _ => Err(Error::InvalidArgument(format!(
                "unknown truncation mode {s:?} (expected per_rotation or per_sweep)"
            ))),
        }
    }
}

impl std::fmt::Display for TruncationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::PerRotation => "per_rotation",
            Self::PerSweep => "per_sweep",
        })
    }
}

pub const DEFAULT_TERM_CAP: usize = 50_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MpConfig {
    pub delta_t: f64,
    pub ell: usize,
    pub prune_eps: f64,
    pub truncation_mode: TruncationMode,
    /// Track discarded weight per step. Costs one extra norm evaluation per
    /// step in per-rotation mode.
    pub record_diagnostics: bool,
    pub term_cap: usize,
    /// Expand polynomial terms on the rayon pool. Results do not depend on
    /// the number of worker threads.
    pub parallel: bool,
}

impl MpConfig {
    pub fn new(delta_t: f64, ell: usize) -> Self {
        Self {
            delta_t,
            ell,
            prune_eps: 0.0,
            truncation_mode: TruncationMode::PerRotation,
            record_diagnostics: true,
            term_cap: DEFAULT_TERM_CAP,
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta_t > 0.0 && self.delta_t.is_finite()) {
            return Err(Error::InvalidArgument(format!("delta_t must be positive, got {}", self.delta_t)));
        }
        if !(self.prune_eps >= 0.0 && self.prune_eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("prune_eps must be nonnegative, got {}", self.prune_eps)));
        }
        if self.term_cap == 0 {
            return Err(Error::InvalidArgument("term_cap must be positive".into()));
        }
        Ok(())
    }
}
