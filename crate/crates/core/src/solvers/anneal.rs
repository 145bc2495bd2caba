use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::qubo::{BitString, QuboProblem, SolveResult, SumForm};

use super::SolverError;

/// Simulated-annealing parameters.
///
/// Cooling is a linear decrement: the temperature starts at
/// `initial_temperature`, the noise operator runs
/// `iterations_per_temperature` times per level, and the temperature drops
/// by `temperature_decrement` after each level until it reaches zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnnealConfig {
    pub initial_temperature: f64,
    pub temperature_decrement: f64,
    pub iterations_per_temperature: usize,
    /// The "Boltzmann constant" scaling the Metropolis criterion; raise it
    /// for objectives with large magnitudes.
    pub boltzmann_constant: f64,
    pub seed: u64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        Self {
            initial_temperature: 1.0,
            temperature_decrement: 0.002,
            iterations_per_temperature: 2_000,
            boltzmann_constant: 0.05,
            seed: 0,
        }
    }
}

impl AnnealConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |m: &str| Err(SolverError::InvalidConfig(m.into()));
        if !(self.initial_temperature > 0.0) {
            return bad("initial_temperature must be positive");
        }
        if !(self.temperature_decrement > 0.0) {
            return bad("temperature_decrement must be positive");
        }
        if self.temperature_decrement >= self.initial_temperature {
            return bad("temperature_decrement must be smaller than initial_temperature");
        }
        if self.iterations_per_temperature == 0 {
            return bad("iterations_per_temperature must be positive");
        }
        if !(self.boltzmann_constant > 0.0) {
            return bad("boltzmann_constant must be positive");
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Number of temperature levels the schedule visits.
    pub fn levels(&self) -> u64 {
        (self.initial_temperature / self.temperature_decrement).ceil() as u64
    }
}

/// Metropolis acceptance: a move from `f_prev` to `f_curr` is kept iff
/// `q = exp((f_prev - f_curr) / (k_B T))` exceeds a fresh uniform draw.
/// Improving moves have `q > 1` and always pass.
fn metropolis_accept(delta: f64, boltzmann: f64, temperature: f64, p: f64) -> bool {
    let q = (-delta / (boltzmann * temperature)).exp();
    q > p
}

/// Simulated annealing for QUBO.
///
/// The noise operator follows the two-step recipe: draw a distinct pair
/// `(i, j)` uniformly and swap `x_i` with `x_j`, then negate each of the two
/// bits independently with probability 1/2. Worse configurations survive per
/// the Metropolis criterion; the best configuration seen is stored and
/// returned. Deterministic for a fixed seed.
pub fn simulated_annealing(
    problem: &QuboProblem,
    config: &AnnealConfig,
) -> Result<SolveResult, SolverError> {
    config.validate()?;
    let start = Instant::now();
    let n = problem.dim();
    let sf = SumForm::new(problem);
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);

    let mut x: Vec<u8> = (0..n).map(|_| u8::from(rng.random::<bool>())).collect();
    let mut current = sf.value(&x);
    // Local fields: flipping bit i changes the objective by +-h[i].
    let mut fields = sf.fields(&x);
    let mut best_value = current;
    let mut best_bits = x.clone();
    let mut trace = vec![(0u64, best_value)];
    let mut evaluations: u64 = 1;

    let mut apply_flip = |x: &mut Vec<u8>, fields: &mut Vec<f64>, i: usize| {
        let sign = if x[i] == 0 { 1.0 } else { -1.0 };
        for &(j, a) in sf.row(i) {
            fields[j] += sign * a;
        }
        x[i] ^= 1;
    };

    let levels = config.levels();
    let mut step: u64 = 0;
    for level in 0..levels {
        let temperature = config.initial_temperature - level as f64 * config.temperature_decrement;
        if temperature <= 0.0 {
            break;
        }
        for _ in 0..config.iterations_per_temperature {
            step += 1;
            // Noise operator.
            let i = rng.random_range(0..n);
            let j = if n > 1 {
                let mut j = rng.random_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                j
            } else {
                i
            };
            let (ci, cj) = (rng.random::<f64>() > 0.5, rng.random::<f64>() > 0.5);
            // After swapping and coin flips the new values of the two bits:
            let new_i = (x[j] == 1) ^ ci;
            let new_j = (x[i] == 1) ^ cj;
            let flip_i = new_i != (x[i] == 1);
            let flip_j = j != i && new_j != (x[j] == 1);

            let mut delta = 0.0;
            if flip_i {
                delta += if x[i] == 0 { fields[i] } else { -fields[i] };
            }
            if flip_j {
                let mut hj = fields[j];
                if flip_i {
                    // Account for the pending change of x_i in j's field.
                    let a = sf
                        .row(j)
                        .iter()
                        .find(|&&(k, _)| k == i)
                        .map(|&(_, a)| a)
                        .unwrap_or(0.0);
                    hj += if x[i] == 0 { a } else { -a };
                }
                delta += if x[j] == 0 { hj } else { -hj };
            }
            evaluations += 1;

            let p: f64 = rng.random();
            if metropolis_accept(delta, config.boltzmann_constant, temperature, p) {
                if flip_i {
                    apply_flip(&mut x, &mut fields, i);
                }
                if flip_j {
                    apply_flip(&mut x, &mut fields, j);
                }
                current += delta;
                if current < best_value {
                    best_value = current;
                    best_bits.copy_from_slice(&x);
                    trace.push((step, best_value));
                }
            }
        }
    }

    Ok(SolveResult::evaluated(
        problem,
        BitString::new(best_bits)?,
        evaluations,
        start.elapsed(),
        Some(trace),
        config.seed,
    )?)
}
