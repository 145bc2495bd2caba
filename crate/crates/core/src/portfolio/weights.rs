use nalgebra::DMatrix;

use crate::qubo::BitString;

use super::{PortfolioError, PortfolioSpec};

/// Per-period asset weights, `T x n` with periods as rows.
///
/// Weights decoded from bit strings are integer multiples of `2^{-l}`;
/// the continuous gradient solver produces arbitrary real weights in the
/// same container.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    values: DMatrix<f64>,
}

impl WeightMatrix {
    pub fn new(values: DMatrix<f64>) -> Self {
        Self { values }
    }

    pub fn n_periods(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_assets(&self) -> usize {
        self.values.ncols()
    }

    pub fn get(&self, period: usize, asset: usize) -> f64 {
        self.values[(period, asset)]
    }

    pub fn period(&self, t: usize) -> Vec<f64> {
        self.values.row(t).iter().copied().collect()
    }

    pub fn period_sum(&self, t: usize) -> f64 {
        self.values.row(t).sum()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n_periods()).map(|t| self.period(t)).collect()
    }
}

/// Decode a bit string into per-period weights.
///
/// Accepts either a full string of `n * T * l` bits (period-major, asset,
/// then bit significance), or — for a 3-asset single-period spec — the toy
/// layout of `2 l` bits where the third weight is filled in analytically as
/// `1 - w_1 - w_2` (and may therefore leave `[0, 1]` when the two encoded
/// weights overshoot).
pub fn decode_weights(
    bits: &BitString,
    spec: &PortfolioSpec,
) -> Result<WeightMatrix, PortfolioError> {
    let codec = spec.codec();
    let ell = spec.bits_per_weight();
    if bits.len() == spec.n_bits() {
        let mut values = DMatrix::zeros(spec.n_periods(), spec.n_assets());
        for t in 0..spec.n_periods() {
            for i in 0..spec.n_assets() {
                let start = spec.bit_index(t, i, 0);
                values[(t, i)] = codec.decode(&bits.bits()[start..start + ell]);
            }
        }
        Ok(WeightMatrix::new(values))
    } else if spec.n_assets() == 3 && spec.n_periods() == 1 && bits.len() == 2 * ell {
        let w1 = codec.decode(&bits.bits()[0..ell]);
        let w2 = codec.decode(&bits.bits()[ell..2 * ell]);
        let mut values = DMatrix::zeros(1, 3);
        values[(0, 0)] = w1;
        values[(0, 1)] = w2;
        values[(0, 2)] = 1.0 - w1 - w2;
        Ok(WeightMatrix::new(values))
    } else {
        Err(PortfolioError::BitLength {
            expected: spec.n_bits(),
            actual: bits.len(),
        })
    }
}

/// Budget-constraint diagnostics for one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodFeasibility {
    pub sum: f64,
    /// `sum - 1`.
    pub deviation: f64,
    /// `F * deviation^2`.
    pub penalty: f64,
}

pub fn feasibility_report(weights: &WeightMatrix, spec: &PortfolioSpec) -> Vec<PeriodFeasibility> {
    (0..weights.n_periods())
        .map(|t| {
            let sum = weights.period_sum(t);
            let deviation = sum - 1.0;
            PeriodFeasibility {
                sum,
                deviation,
                penalty: spec.penalty() * deviation * deviation,
            }
        })
        .collect()
}

/// The dynamic objective evaluated with real weights:
///
/// ```text
/// sum_t [ -r_t . w_t + lambda w_t^T C_t w_t
///         + mu sum_i nu_i^(t) (w_i^(t) - w_i^(t-1))^2
///         + F (sum_i w_i^(t) - 1)^2 ]
/// ```
///
/// with `w^(0) = 0`. When the weights are exact binary-fraction decodings of
/// a bit string this equals the QUBO objective of that string.
pub fn continuous_objective(weights: &WeightMatrix, spec: &PortfolioSpec) -> f64 {
    let n = spec.n_assets();
    let mut total = 0.0;
    for t in 0..spec.n_periods() {
        let r = spec.returns(t);
        let c = spec.covariance(t);
        let nu = spec.unit_costs(t);
        let mut ret = 0.0;
        let mut risk = 0.0;
        let mut cost = 0.0;
        let mut sum = 0.0;
        for i in 0..n {
            let w = weights.get(t, i);
            ret += r[i] * w;
            sum += w;
            let prev = if t == 0 { 0.0 } else { weights.get(t - 1, i) };
            let d = w - prev;
            cost += nu[i] * d * d;
            let mut acc = 0.0;
            for j in 0..n {
                acc += c[(i, j)] * weights.get(t, j);
            }
            risk += w * acc;
        }
        let dev = sum - 1.0;
        total += -ret
            + spec.risk_aversion() * risk
            + spec.cost_sensitivity() * cost
            + spec.penalty() * dev * dev;
    }
    total
}

/// Analytic gradient of [`continuous_objective`] with respect to every
/// weight, as a `T x n` matrix. `include_penalty = false` drops the budget
/// term, which is how the projected-gradient solver uses it (feasibility is
/// enforced by projection instead).
pub fn continuous_gradient(
    weights: &WeightMatrix,
    spec: &PortfolioSpec,
    include_penalty: bool,
) -> DMatrix<f64> {
    let n = spec.n_assets();
    let t_count = spec.n_periods();
    let mut grad = DMatrix::zeros(t_count, n);
    for t in 0..t_count {
        let r = spec.returns(t);
        let c = spec.covariance(t);
        let nu = spec.unit_costs(t);
        let dev = weights.period_sum(t) - 1.0;
        for i in 0..n {
            let w = weights.get(t, i);
            let mut g = -r[i];
            let mut acc = 0.0;
            for j in 0..n {
                acc += c[(i, j)] * weights.get(t, j);
            }
            g += 2.0 * spec.risk_aversion() * acc;
            let prev = if t == 0 { 0.0 } else { weights.get(t - 1, i) };
            g += 2.0 * spec.cost_sensitivity() * nu[i] * (w - prev);
            if t + 1 < t_count {
                let nu_next = spec.unit_costs(t + 1);
                g -= 2.0 * spec.cost_sensitivity() * nu_next[i] * (weights.get(t + 1, i) - w);
            }
            if include_penalty {
                g += 2.0 * spec.penalty() * dev;
            }
            grad[(t, i)] = g;
        }
    }
    grad
}
