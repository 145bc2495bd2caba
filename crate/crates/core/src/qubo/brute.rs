use std::time::Instant;

use super::{BitString, QuboError, QuboProblem, SolveResult, SumForm};

/// Default variable-count cap for the exhaustive scan.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 30;

/// Exhaustive scan of all `2^n` bit strings, returning the global minimizer.
///
/// Ties are broken towards the lexicographically smallest bit string, so the
/// output is deterministic. `evaluations` in the result equals `2^n`.
pub fn brute_force(problem: &QuboProblem) -> Result<SolveResult, QuboError> {
    brute_force_with_cap(problem, DEFAULT_BRUTE_FORCE_CAP)
}

/// [`brute_force`] with an explicit variable-count cap.
pub fn brute_force_with_cap(problem: &QuboProblem, cap: usize) -> Result<SolveResult, QuboError> {
    let n = problem.dim();
    if n > cap {
        return Err(QuboError::CapacityExceeded { dim: n, cap });
    }
    let start = Instant::now();
    let sf = SumForm::new(problem);

    // Gray-code walk: consecutive strings differ in one bit, so each step is
    // a single delta update.
    let mut x = vec![0u8; n];
    let mut current = sf.constant();
    let mut best_value = current;
    let mut best_bits = x.clone();
    let total = 1u64 << n;
    for k in 1..total {
        let i = k.trailing_zeros() as usize;
        current += sf.flip_delta(&x, i);
        x[i] ^= 1;
        if current < best_value || (current == best_value && x < best_bits) {
            best_value = current;
            best_bits = x.clone();
        }
    }

    SolveResult::evaluated(
        problem,
        BitString::new(best_bits)?,
        total,
        start.elapsed(),
        None,
        0,
    )
}
