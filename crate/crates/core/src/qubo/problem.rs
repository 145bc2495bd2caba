use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::fmt;

use super::QuboError;

/// A candidate solution: a fixed-length sequence of bits.
///
/// The natural correspondence with basis-state indices is little-endian:
/// bit `i` of the string equals bit `i` of the index (`(index >> i) & 1`).
/// The derived `Ord` is lexicographic on the bit sequence, which is the tie
/// rule used by the exact solvers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BitString(Vec<u8>);

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self, QuboError> {
        if bits.iter().any(|&b| b > 1) {
            return Err(QuboError::InvalidProblem(
                "bit strings may only contain 0 and 1".into(),
            ));
        }
        Ok(Self(bits))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// Bit string for basis-state `index` over `len` variables (little-endian).
    pub fn from_index(len: usize, index: u64) -> Self {
        assert!(len <= 64, "index-based construction limited to 64 bits");
        Self((0..len).map(|i| ((index >> i) & 1) as u8).collect())
    }

    /// Basis-state index of this string (little-endian); `None` above 64 bits.
    pub fn to_index(&self) -> Option<u64> {
        if self.0.len() > 64 {
            return None;
        }
        Some(
            self.0
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i)),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] ^= 1;
    }

    pub fn set(&mut self, i: usize, value: u8) {
        debug_assert!(value <= 1);
        self.0[i] = value;
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl From<Vec<u8>> for BitString {
    fn from(bits: Vec<u8>) -> Self {
        Self::new(bits).expect("bits must be 0 or 1")
    }
}

/// A quadratic unconstrained binary optimization problem
/// `f(x) = 1/2 x^T A x + b^T x + c` with symmetric `A`.
///
/// The quadratic matrix is symmetrized on construction; asymmetry beyond
/// `1e-9` (relative) is tolerated but logged, since data pipelines may
/// produce rounding asymmetry. Instances are immutable afterwards and safe
/// to share across concurrent solver runs.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboProblem {
    quad: DMatrix<f64>,
    lin: DVector<f64>,
    offset: f64,
}

impl QuboProblem {
    pub fn new(quad: DMatrix<f64>, lin: DVector<f64>, offset: f64) -> Result<Self, QuboError> {
        if quad.nrows() != quad.ncols() {
            return Err(QuboError::InvalidProblem(format!(
                "quadratic matrix must be square, got {}x{}",
                quad.nrows(),
                quad.ncols()
            )));
        }
        if quad.nrows() != lin.len() {
            return Err(QuboError::InvalidProblem(format!(
                "matrix dimension {} does not match linear vector length {}",
                quad.nrows(),
                lin.len()
            )));
        }
        if quad.nrows() == 0 {
            return Err(QuboError::InvalidProblem(
                "problem must have at least one variable".into(),
            ));
        }
        if quad.iter().any(|v| !v.is_finite())
            || lin.iter().any(|v| !v.is_finite())
            || !offset.is_finite()
        {
            return Err(QuboError::InvalidProblem(
                "all coefficients must be finite".into(),
            ));
        }

        let norm = quad.amax().max(1.0);
        let mut worst = 0.0f64;
        let mut sym = quad;
        for i in 0..sym.nrows() {
            for j in (i + 1)..sym.ncols() {
                let a = sym[(i, j)];
                let b = sym[(j, i)];
                worst = worst.max((a - b).abs() / norm);
                let m = 0.5 * (a + b);
                sym[(i, j)] = m;
                sym[(j, i)] = m;
            }
        }
        if worst > 1e-9 {
            log::warn!(
                "quadratic matrix asymmetric (relative deviation {worst:.3e}); \
                 symmetrized to (A + A^T)/2"
            );
        }

        Ok(Self {
            quad: sym,
            lin,
            offset,
        })
    }

    /// Problem with `A = 0`: a purely linear objective `b^T x + c`.
    pub fn linear(lin: DVector<f64>, offset: f64) -> Result<Self, QuboError> {
        let n = lin.len();
        Self::new(DMatrix::zeros(n, n), lin, offset)
    }

    pub fn dim(&self) -> usize {
        self.lin.len()
    }

    pub fn quad(&self) -> &DMatrix<f64> {
        &self.quad
    }

    pub fn lin(&self) -> &DVector<f64> {
        &self.lin
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Coefficient of `x_i * x_j` (`i <= j`) in the expanded sum form.
    ///
    /// For `i < j` this is `a_ij` (the pair appears twice in `1/2 x^T A x`);
    /// for `i == j` it is `a_ii / 2`, which is effectively a linear
    /// contribution because `x_i^2 = x_i`.
    pub fn sum_form_coefficient(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i <= j);
        if i == j {
            0.5 * self.quad[(i, i)]
        } else {
            self.quad[(i, j)]
        }
    }

    /// Objective value `1/2 x^T A x + b^T x + c` in double precision.
    pub fn evaluate(&self, bits: &BitString) -> Result<f64, QuboError> {
        if bits.len() != self.dim() {
            return Err(QuboError::DimensionMismatch {
                expected: self.dim(),
                actual: bits.len(),
            });
        }
        let x = bits.bits();
        let mut quad_part = 0.0;
        let mut lin_part = 0.0;
        for i in 0..self.dim() {
            if x[i] == 0 {
                continue;
            }
            lin_part += self.lin[i];
            let row = self.quad.row(i);
            let mut acc = 0.0;
            for j in 0..self.dim() {
                if x[j] == 1 {
                    acc += row[j];
                }
            }
            quad_part += acc;
        }
        Ok(0.5 * quad_part + lin_part + self.offset)
    }
}
