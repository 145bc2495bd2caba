use std::time::Duration;

use super::{BitString, QuboError, QuboProblem};

/// Outcome of one solver run.
///
/// The objective is always recomputed from the returned bits on
/// construction, so a result can never carry a stale or drifted value.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub bits: BitString,
    pub objective: f64,
    /// Number of objective evaluations the run performed (incremental
    /// delta updates count as evaluations).
    pub evaluations: u64,
    pub wall_time: Duration,
    /// Best-so-far trajectory as `(step, objective)` pairs, when recorded.
    pub trace: Option<Vec<(u64, f64)>>,
    pub seed: u64,
}

impl SolveResult {
    pub fn evaluated(
        problem: &QuboProblem,
        bits: BitString,
        evaluations: u64,
        wall_time: Duration,
        trace: Option<Vec<(u64, f64)>>,
        seed: u64,
    ) -> Result<Self, QuboError> {
        let objective = problem.evaluate(&bits)?;
        Ok(Self {
            bits,
            objective,
            evaluations,
            wall_time,
            trace,
            seed,
        })
    }
}
