//! Classical QUBO solvers — simulated annealing, genetic optimization,
//! branch and bound — and the continuous projected-gradient reference solver
//! for the portfolio problem.

mod anneal;
mod bnb;
mod genetic;
mod gradient;

pub use anneal::{simulated_annealing, AnnealConfig};
pub use bnb::{branch_and_bound, BnbConfig, BnbOutcome, VariableOrder};
pub use genetic::{genetic_optimize, GeneticConfig};
pub use gradient::{projected_gradient, project_to_simplex, GradientConfig, GradientOutcome};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Qubo(#[from] crate::qubo::QuboError),
}
