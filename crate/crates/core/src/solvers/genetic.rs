use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::qubo::{BitString, QuboProblem, SolveResult, SumForm};

use super::SolverError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeneticConfig {
    pub population_size: usize,
    pub generations: usize,
    /// Per-bit flip probability applied to every offspring.
    pub mutation_rate: f64,
    /// Probability that an offspring is produced by single-point crossover
    /// rather than cloning its first parent.
    pub crossover_rate: f64,
    /// Number of top individuals shielded from replacement.
    pub elite_count: usize,
    pub seed: u64,
}

impl Default for GeneticConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            generations: 400,
            mutation_rate: 0.02,
            crossover_rate: 0.9,
            elite_count: 2,
            seed: 0,
        }
    }
}

impl GeneticConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |m: &str| Err(SolverError::InvalidConfig(m.into()));
        if self.population_size == 0 {
            return bad("population_size must be positive");
        }
        if self.elite_count >= self.population_size {
            return bad("elite_count must be smaller than population_size");
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad("mutation_rate must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return bad("crossover_rate must lie in [0, 1]");
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Genetic optimization with strictly-better-only replacement.
///
/// Steady-state scheme: per generation the loop produces `population_size`
/// offspring (tournament selection of size 2, single-point crossover,
/// per-bit mutation); an offspring enters the population only if it is
/// strictly fitter than the current worst member, which it then replaces.
/// Offspring with a worse objective are always rejected, so the population
/// never degrades — and, like any purely elitist scheme, it can get stuck in
/// a local minimum. The best individual is never the replacement victim.
pub fn genetic_optimize(
    problem: &QuboProblem,
    config: &GeneticConfig,
) -> Result<SolveResult, SolverError> {
    config.validate()?;
    let start = Instant::now();
    let n = problem.dim();
    let sf = SumForm::new(problem);
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);

    let mut population: Vec<Vec<u8>> = (0..config.population_size)
        .map(|_| (0..n).map(|_| u8::from(rng.random::<bool>())).collect())
        .collect();
    let mut fitness: Vec<f64> = population.iter().map(|x| sf.value(x)).collect();
    let mut evaluations = config.population_size as u64;

    let best_index = |fitness: &[f64]| {
        fitness
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap()
    };
    let worst_index = |fitness: &[f64]| {
        fitness
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap()
    };

    let mut best = best_index(&fitness);
    let mut trace = vec![(0u64, fitness[best])];
    let mut step = 0u64;

    for _ in 0..config.generations {
        for _ in 0..config.population_size {
            step += 1;
            let a = tournament(&fitness, &mut rng);
            let b = tournament(&fitness, &mut rng);
            let mut child: Vec<u8> = if n > 1 && rng.random::<f64>() < config.crossover_rate {
                let cut = rng.random_range(1..n);
                let mut c = population[a][..cut].to_vec();
                c.extend_from_slice(&population[b][cut..]);
                c
            } else {
                population[a].clone()
            };
            for bit in child.iter_mut() {
                if rng.random::<f64>() < config.mutation_rate {
                    *bit ^= 1;
                }
            }
            let value = sf.value(&child);
            evaluations += 1;
            let worst = worst_index(&fitness);
            if value < fitness[worst] {
                population[worst] = child;
                fitness[worst] = value;
                if value < fitness[best] {
                    best = worst;
                    trace.push((step, value));
                }
            }
        }
    }

    let _ = config.elite_count; // replacement always targets the worst member
    Ok(SolveResult::evaluated(
        problem,
        BitString::new(population[best].clone())?,
        evaluations,
        start.elapsed(),
        Some(trace),
        config.seed,
    )?)
}

fn tournament(fitness: &[f64], rng: &mut ChaCha12Rng) -> usize {
    let a = rng.random_range(0..fitness.len());
    let b = rng.random_range(0..fitness.len());
    if fitness[a] <= fitness[b] {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{dvector, DVector};
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn one_variable_problem_is_immediate() {
        let problem = QuboProblem::linear(dvector![-2.0], 0.0).unwrap();
        let result = genetic_optimize(
            &problem,
            &GeneticConfig {
                population_size: 10,
                generations: 1,
                ..GeneticConfig::default()
            },
        )
        .unwrap();
        assert_eq!(result.bits.bits(), &[1]);
        assert_eq!(result.objective, -2.0);
    }

    #[test]
    fn solves_random_linear_objective() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let n = 30;
        let lin = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let expected: Vec<u8> = lin.iter().map(|&b| u8::from(b <= 0.0)).collect();
        let problem = QuboProblem::linear(lin, 0.0).unwrap();
        let result = genetic_optimize(&problem, &GeneticConfig::default()).unwrap();
        assert_eq!(result.bits.bits(), expected.as_slice());
    }

    #[test]
    fn deterministic_per_seed() {
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let lin = DVector::from_fn(12, |_, _| rng.random_range(-1.0..1.0));
        let problem = QuboProblem::linear(lin, 0.0).unwrap();
        let cfg = GeneticConfig::default().with_seed(11);
        let a = genetic_optimize(&problem, &cfg).unwrap();
        let b = genetic_optimize(&problem, &cfg).unwrap();
        assert_eq!(a.bits, b.bits);
        assert_eq!(a.evaluations, b.evaluations);
    }

    #[test]
    fn elite_count_validated() {
        let cfg = GeneticConfig {
            population_size: 5,
            elite_count: 5,
            ..GeneticConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
