//! General QUBO problems: representation, evaluation, exhaustive solving,
//! the Ising mapping and the text problem-file format.
//!
//! A problem is the triple `(A, b, c)` of the objective
//!
//! ```text
//! f(x) = 1/2 x^T A x + b^T x + c,      x in {0,1}^n, A symmetric.
//! ```
//!
//! Because `x_i^2 = x_i`, the same objective reads in expanded "sum form" as
//! `sum_{i<j} a_ij x_i x_j + sum_i (b_i + a_ii/2) x_i + c`; the problem-file
//! format and [`SumForm`] store those expanded coefficients once per pair.

mod brute;
mod ising;
mod io;
mod problem;
mod solve_result;
mod sum_form;

pub use brute::{brute_force, brute_force_with_cap, DEFAULT_BRUTE_FORCE_CAP};
pub use ising::IsingModel;
pub use io::{load_problem, save_problem};
pub use problem::{BitString, QuboProblem};
pub use solve_result::SolveResult;
pub use sum_form::SumForm;

use thiserror::Error;

/// Errors produced by QUBO construction, evaluation and file I/O.
#[derive(Debug, Error)]
pub enum QuboError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("dimension mismatch: problem has {expected} variables, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("problem has {dim} variables, exceeding the brute-force cap of {cap}")]
    CapacityExceeded { dim: usize, cap: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
