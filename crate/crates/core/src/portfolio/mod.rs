//! Assembly of the discrete-time dynamic binary portfolio-optimization QUBO
//! from per-period statistics, plus decoding of solver bit strings back into
//! currency weights.

mod builder;
mod spec;
mod weights;

pub use builder::{build_dynamic_qubo, build_toy_qubo};
pub use spec::{PortfolioSpec, WeightCodec};
pub use weights::{
    continuous_gradient, continuous_objective, decode_weights, feasibility_report,
    PeriodFeasibility, WeightMatrix,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PortfolioError {
    #[error("invalid portfolio spec: {0}")]
    InvalidSpec(String),

    #[error("bit string of length {actual} does not fit the spec (expected {expected})")]
    BitLength { expected: usize, actual: usize },

    #[error("toy construction requires 3 assets and a single period, got {assets} assets, {periods} periods")]
    ToyShape { assets: usize, periods: usize },

    #[error(transparent)]
    Qubo(#[from] crate::qubo::QuboError),
}
