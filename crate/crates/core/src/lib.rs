//! Dynamic Markowitz portfolio optimization as QUBO.
//!
//! The crate assembles multi-period mean-variance portfolio selection with
//! transaction costs into quadratic unconstrained binary optimization
//! problems, and solves them with classical exact/heuristic algorithms
//! (brute force, branch and bound, simulated annealing, genetic
//! optimization), a continuous projected-gradient reference solver, and
//! exact statevector simulations of gate-model quantum algorithms (Grover
//! search, Grover adaptive search, QAOA, VQE).
//!
//! Bundled FX statistics for three crisis windows feed the `toy`, `testing`
//! and `practical` problem instances; the [`harness`] module runs seeded,
//! reproducible solver benchmarks over them.

pub mod harness;
pub mod instances;
pub mod market;
pub mod portfolio;
pub mod qubo;
pub mod quantum;
pub mod solvers;

pub use qubo::{BitString, IsingModel, QuboProblem, SolveResult};
