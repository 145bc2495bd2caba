use super::{BitString, QuboProblem};

/// Expanded polynomial ("sum form") view of a problem, precomputed for the
/// solvers' hot loops.
///
/// Stores `f(x) = sum_{i<j} pair_ij x_i x_j + sum_i linear_i x_i + constant`
/// with `pair_ij = a_ij` and `linear_i = b_i + a_ii/2` (the diagonal of `A`
/// folds into the linear part because `x_i^2 = x_i`).
#[derive(Debug, Clone)]
pub struct SumForm {
    linear: Vec<f64>,
    /// Nonzero pair coefficients, `i < j`.
    pairs: Vec<(usize, usize, f64)>,
    /// Adjacency in both directions: `rows[i]` lists `(j, pair_ij)` for `j != i`.
    rows: Vec<Vec<(usize, f64)>>,
    constant: f64,
}

impl SumForm {
    pub fn new(problem: &QuboProblem) -> Self {
        let n = problem.dim();
        let quad = problem.quad();
        let mut linear = vec![0.0; n];
        let mut pairs = Vec::new();
        let mut rows = vec![Vec::new(); n];
        for i in 0..n {
            linear[i] = problem.lin()[i] + 0.5 * quad[(i, i)];
            for j in (i + 1)..n {
                let a = quad[(i, j)];
                if a != 0.0 {
                    pairs.push((i, j, a));
                    rows[i].push((j, a));
                    rows[j].push((i, a));
                }
            }
        }
        Self {
            linear,
            pairs,
            rows,
            constant: problem.offset(),
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn pairs(&self) -> &[(usize, usize, f64)] {
        &self.pairs
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn value(&self, x: &[u8]) -> f64 {
        let mut total = self.constant;
        for (i, &l) in self.linear.iter().enumerate() {
            if x[i] == 1 {
                total += l;
            }
        }
        for &(i, j, a) in &self.pairs {
            if x[i] == 1 && x[j] == 1 {
                total += a;
            }
        }
        total
    }

    /// Change in objective if bit `i` of `x` were flipped.
    pub fn flip_delta(&self, x: &[u8], i: usize) -> f64 {
        let mut field = self.linear[i];
        for &(j, a) in &self.rows[i] {
            if x[j] == 1 {
                field += a;
            }
        }
        if x[i] == 0 {
            field
        } else {
            -field
        }
    }

    /// Local fields `h_i = linear_i + sum_j pair_ij x_j` for every variable.
    ///
    /// Flipping bit `i` changes the objective by `h_i` (if `x_i = 0`) or
    /// `-h_i` (if `x_i = 1`); the annealer keeps this vector incrementally.
    pub fn fields(&self, x: &[u8]) -> Vec<f64> {
        let mut h = self.linear.clone();
        for &(i, j, a) in &self.pairs {
            if x[j] == 1 {
                h[i] += a;
            }
            if x[i] == 1 {
                h[j] += a;
            }
        }
        h
    }

    /// Objective values for all `2^n` bit strings, indexed by basis state
    /// (little-endian), computed with a Gray-code walk.
    ///
    /// Intended for enumeration oracles and the statevector simulators;
    /// panics above 26 variables.
    pub fn values_by_index(&self) -> Vec<f64> {
        let n = self.dim();
        assert!(n <= 26, "exhaustive value table limited to 26 variables");
        let size = 1usize << n;
        let mut values = vec![0.0; size];
        let mut x = vec![0u8; n];
        let mut current = self.constant;
        values[0] = current;
        for k in 1..size as u64 {
            let i = k.trailing_zeros() as usize;
            current += self.flip_delta(&x, i);
            x[i] ^= 1;
            let gray = (k ^ (k >> 1)) as usize;
            values[gray] = current;
        }
        values
    }

    pub fn value_of(&self, bits: &BitString) -> f64 {
        self.value(bits.bits())
    }

    /// `sum |pair_ij| + sum |linear_i|`: with the constant-offset term added,
    /// an enumeration-free upper bound on `|f(x) - constant|`.
    pub fn coefficient_bound(&self) -> f64 {
        self.pairs.iter().map(|&(_, _, a)| a.abs()).sum::<f64>()
            + self.linear.iter().map(|l| l.abs()).sum::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{dmatrix, dvector};

    fn sample() -> QuboProblem {
        QuboProblem::new(
            dmatrix![0.4, -1.0, 0.0; -1.0, 0.0, 2.0; 0.0, 2.0, -0.6],
            dvector![1.0, -0.5, 0.25],
            0.125,
        )
        .unwrap()
    }

    #[test]
    fn value_matches_evaluate() {
        let p = sample();
        let sf = SumForm::new(&p);
        for idx in 0..8u64 {
            let bits = BitString::from_index(3, idx);
            assert!((sf.value_of(&bits) - p.evaluate(&bits).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn flip_delta_consistent() {
        let p = sample();
        let sf = SumForm::new(&p);
        for idx in 0..8u64 {
            let mut bits = BitString::from_index(3, idx);
            for i in 0..3 {
                let before = sf.value_of(&bits);
                let delta = sf.flip_delta(bits.bits(), i);
                bits.flip(i);
                let after = sf.value_of(&bits);
                bits.flip(i);
                assert!((before + delta - after).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn values_by_index_enumerates_all() {
        let p = sample();
        let sf = SumForm::new(&p);
        let values = sf.values_by_index();
        for idx in 0..8u64 {
            let bits = BitString::from_index(3, idx);
            assert!((values[idx as usize] - p.evaluate(&bits).unwrap()).abs() < 1e-10);
        }
    }
}
