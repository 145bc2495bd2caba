use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use super::{QuboError, QuboProblem};

/// Diagonal Ising Hamiltonian over spins `z_i` in `{-1, +1}`:
/// `E(z) = sum_{i<j} Q_ij z_i z_j + sum_i c_i z_i + offset`.
///
/// Obtained from a QUBO problem through the substitution `x_i = (1 - z_i)/2`;
/// constants produced by the substitution are absorbed into the offset so the
/// energy of every spin configuration equals the QUBO objective of the
/// corresponding bit string.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    /// Pairwise couplings, keyed by `(i, j)` with `i < j`. Zero couplings are
    /// not stored.
    couplings: BTreeMap<(usize, usize), f64>,
    fields: Vec<f64>,
    offset: f64,
}

impl IsingModel {
    pub fn new(
        dim: usize,
        couplings: BTreeMap<(usize, usize), f64>,
        fields: Vec<f64>,
        offset: f64,
    ) -> Result<Self, QuboError> {
        if fields.len() != dim {
            return Err(QuboError::InvalidProblem(format!(
                "field vector length {} does not match dimension {dim}",
                fields.len()
            )));
        }
        for (&(i, j), v) in &couplings {
            if i >= j {
                return Err(QuboError::InvalidProblem(format!(
                    "coupling ({i}, {j}) violates i < j (self-couplings are not allowed)"
                )));
            }
            if j >= dim {
                return Err(QuboError::InvalidProblem(format!(
                    "coupling ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            if !v.is_finite() {
                return Err(QuboError::InvalidProblem(format!(
                    "coupling ({i}, {j}) is not finite"
                )));
            }
        }
        if fields.iter().any(|v| !v.is_finite()) || !offset.is_finite() {
            return Err(QuboError::InvalidProblem(
                "fields and offset must be finite".into(),
            ));
        }
        Ok(Self {
            couplings,
            fields,
            offset,
        })
    }

    pub fn dim(&self) -> usize {
        self.fields.len()
    }

    pub fn couplings(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.couplings
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Energy of a spin configuration (`spins[i]` must be -1 or +1).
    pub fn energy(&self, spins: &[i8]) -> Result<f64, QuboError> {
        if spins.len() != self.dim() {
            return Err(QuboError::DimensionMismatch {
                expected: self.dim(),
                actual: spins.len(),
            });
        }
        if spins.iter().any(|&s| s != 1 && s != -1) {
            return Err(QuboError::InvalidProblem(
                "spins must be -1 or +1".into(),
            ));
        }
        let mut e = self.offset;
        for (&(i, j), &q) in &self.couplings {
            e += q * f64::from(spins[i]) * f64::from(spins[j]);
        }
        for (i, &c) in self.fields.iter().enumerate() {
            e += c * f64::from(spins[i]);
        }
        Ok(e)
    }

    /// Inverse of [`QuboProblem::to_ising`] via `z_i = 1 - 2 x_i`.
    ///
    /// The returned problem has a zero diagonal (the Ising expansion carries
    /// no `x_i^2` terms); it agrees with the original objective on every bit
    /// string.
    pub fn to_qubo(&self) -> QuboProblem {
        let n = self.dim();
        let mut quad = DMatrix::zeros(n, n);
        let mut lin = DVector::zeros(n);
        let mut offset = self.offset;
        for (&(i, j), &q) in &self.couplings {
            // z_i z_j = 1 - 2 x_i - 2 x_j + 4 x_i x_j
            quad[(i, j)] += 4.0 * q;
            quad[(j, i)] += 4.0 * q;
            lin[i] += -2.0 * q;
            lin[j] += -2.0 * q;
            offset += q;
        }
        for (i, &c) in self.fields.iter().enumerate() {
            // z_i = 1 - 2 x_i
            lin[i] += -2.0 * c;
            offset += c;
        }
        QuboProblem::new(quad, lin, offset).expect("inverse mapping is always well formed")
    }
}

impl QuboProblem {
    /// Map to the equivalent Ising Hamiltonian via `x_i = (1 - z_i)/2`.
    ///
    /// For every bit string, the energy of the corresponding spin
    /// configuration equals the QUBO objective exactly (constants are
    /// absorbed into the offset).
    pub fn to_ising(&self) -> IsingModel {
        let n = self.dim();
        let quad = self.quad();
        let mut couplings = BTreeMap::new();
        let mut fields = vec![0.0; n];
        // 1/2 x^T A x = 1/8 [ S - 2 sum_i R_i z_i + sum_i a_ii + 2 sum_{i<j} a_ij z_i z_j ]
        // with S the full double sum and R_i the i-th row sum.
        let mut full_sum = 0.0;
        let mut diag_sum = 0.0;
        for i in 0..n {
            let mut row_sum = 0.0;
            for j in 0..n {
                row_sum += quad[(i, j)];
            }
            full_sum += row_sum;
            diag_sum += quad[(i, i)];
            fields[i] = -0.25 * row_sum - 0.5 * self.lin()[i];
            for j in (i + 1)..n {
                let q = 0.25 * quad[(i, j)];
                if q != 0.0 {
                    couplings.insert((i, j), q);
                }
            }
        }
        let offset = 0.125 * (full_sum + diag_sum)
            + 0.5 * self.lin().iter().sum::<f64>()
            + self.offset();
        IsingModel {
            couplings,
            fields,
            offset,
        }
    }
}

/// Spin configuration corresponding to a bit string (`x = 0 -> z = +1`).
pub(crate) fn spins_from_bits(bits: &[u8]) -> Vec<i8> {
    bits.iter().map(|&b| if b == 0 { 1 } else { -1 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubo::BitString;
    use nalgebra::dvector;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn single_linear_variable() {
        // f(x) = x  ->  field -1/2, offset 1/2
        let p = QuboProblem::linear(dvector![1.0], 0.0).unwrap();
        let ising = p.to_ising();
        assert!(ising.couplings().is_empty());
        assert_eq!(ising.fields(), &[-0.5]);
        assert_eq!(ising.offset(), 0.5);
        assert_eq!(ising.energy(&[-1]).unwrap(), 1.0); // x = 1
        assert_eq!(ising.energy(&[1]).unwrap(), 0.0); // x = 0
    }

    #[test]
    fn zero_problem_maps_to_zero_model() {
        let p = QuboProblem::new(DMatrix::zeros(3, 3), DVector::zeros(3), 0.0).unwrap();
        let ising = p.to_ising();
        assert!(ising.couplings().is_empty());
        assert!(ising.fields().iter().all(|&f| f == 0.0));
        assert_eq!(ising.offset(), 0.0);
    }

    #[test]
    fn energy_of_zero_model_is_offset() {
        let m = IsingModel::new(2, BTreeMap::new(), vec![0.0, 0.0], 3.5).unwrap();
        assert_eq!(m.energy(&[1, -1]).unwrap(), 3.5);
    }

    #[test]
    fn self_coupling_rejected() {
        let mut c = BTreeMap::new();
        c.insert((1, 1), 0.5);
        assert!(IsingModel::new(3, c, vec![0.0; 3], 0.0).is_err());
    }

    #[test]
    fn energy_matches_naive_sum_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = 5;
            let mut couplings = BTreeMap::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    couplings.insert((i, j), rng.random_range(-1.0..1.0));
                }
            }
            let fields: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let offset = rng.random_range(-1.0..1.0);
            let m = IsingModel::new(n, couplings.clone(), fields.clone(), offset).unwrap();
            let spins: Vec<i8> = (0..n)
                .map(|_| if rng.random::<bool>() { 1 } else { -1 })
                .collect();
            let mut expected = offset;
            for (&(i, j), &q) in &couplings {
                expected += q * f64::from(spins[i]) * f64::from(spins[j]);
            }
            for i in 0..n {
                expected += fields[i] * f64::from(spins[i]);
            }
            assert!((m.energy(&spins).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn random_problems_agree_on_all_strings() {
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        for _ in 0..50 {
            let n = rng.random_range(1..=8);
            let mut quad = DMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v: f64 = rng.random_range(-2.0..2.0);
                    quad[(i, j)] = v;
                    quad[(j, i)] = v;
                }
            }
            let lin = DVector::from_fn(n, |_, _| rng.random_range(-2.0..2.0));
            let p = QuboProblem::new(quad, lin, rng.random_range(-1.0..1.0)).unwrap();
            let ising = p.to_ising();
            let back = ising.to_qubo();
            for idx in 0..(1u64 << n) {
                let bits = BitString::from_index(n, idx);
                let f = p.evaluate(&bits).unwrap();
                let e = ising.energy(&spins_from_bits(bits.bits())).unwrap();
                assert!((f - e).abs() < 1e-9, "qubo {f} vs ising {e}");
                let g = back.evaluate(&bits).unwrap();
                assert!((f - g).abs() < 1e-9, "round trip {f} vs {g}");
            }
        }
    }

    #[test]
    fn ising_roundtrip_is_identity_on_models() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let n = 6;
        let mut couplings = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random::<bool>() {
                    couplings.insert((i, j), rng.random_range(-1.0..1.0));
                }
            }
        }
        let fields: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let m = IsingModel::new(n, couplings, fields, 0.25).unwrap();
        let back = m.to_qubo().to_ising();
        assert_eq!(m.dim(), back.dim());
        assert!((m.offset() - back.offset()).abs() < 1e-12);
        for i in 0..n {
            assert!((m.fields()[i] - back.fields()[i]).abs() < 1e-12);
        }
        for (&k, &v) in m.couplings() {
            assert!((back.couplings()[&k] - v).abs() < 1e-12);
        }
    }
}
