use std::fmt::Write as _;

use serde::Serialize;

pub const TRACE_CSV_HEADER: &str = "step,time,n_terms,max_degree,frob_norm,discarded_weight";

/// State after `step` steps. `discarded_weight` is the square root of the
/// squared coefficient mass removed during that step alone.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub time: f64,
    pub n_terms: usize,
    pub max_degree: usize,
    pub frob_norm: f64,
    pub discarded_weight: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PropagationTrace {
    pub records: Vec<StepRecord>,
}

impl PropagationTrace {
    pub fn push(&mut self, r: StepRecord) {
        self.records.push(r);
    }

    pub fn last(&self) -> Option<&StepRecord> {
        self.records.last()
    }

    /// `sqrt(Σ_steps discarded²)`.
    pub fn total_discarded(&self) -> f64 {
        self.records.iter().map(|r| r.discarded_weight * r.discarded_weight).sum::<f64>().sqrt()
    }

    pub fn max_terms(&self) -> usize {
        self.records.iter().map(|r| r.n_terms).max().unwrap_or(0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.records.len() + 1));
        out.push_str(TRACE_CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            writeln!(
                out,
                "{},{:.6},{},{},{:.12e},{:.12e}",
                r.step, r.time, r.n_terms, r.max_degree, r.frob_norm, r.discarded_weight
            )
            .expect("writing to a String");
        }
        out
    }
}
