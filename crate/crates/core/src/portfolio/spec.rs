use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::PortfolioError;

/// Binary-fraction encoding of one weight over `l` bits:
/// `w = sum_{k=1..l} 2^{-k} x^(k)`, so any decoded weight lies in
/// `[0, 1 - 2^{-l}]` on a lattice with spacing `2^{-l}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightCodec {
    bits_per_weight: usize,
}

impl WeightCodec {
    pub fn new(bits_per_weight: usize) -> Self {
        assert!(bits_per_weight >= 1 && bits_per_weight <= 53);
        Self { bits_per_weight }
    }

    pub fn bits_per_weight(&self) -> usize {
        self.bits_per_weight
    }

    /// Place value of bit `k` (0-based): `2^{-(k+1)}`.
    pub fn scale(&self, k: usize) -> f64 {
        debug_assert!(k < self.bits_per_weight);
        (0.5f64).powi(k as i32 + 1)
    }

    pub fn scales(&self) -> Vec<f64> {
        (0..self.bits_per_weight).map(|k| self.scale(k)).collect()
    }

    pub fn decode(&self, bits: &[u8]) -> f64 {
        debug_assert_eq!(bits.len(), self.bits_per_weight);
        bits.iter()
            .enumerate()
            .map(|(k, &b)| f64::from(b) * self.scale(k))
            .sum()
    }

    /// Largest representable weight, `1 - 2^{-l}`.
    pub fn max_weight(&self) -> f64 {
        1.0 - (0.5f64).powi(self.bits_per_weight as i32)
    }
}

/// Inputs of the dynamic portfolio optimization: per-period statistics plus
/// the model parameters.
///
/// Statistics are consumed in whatever units they carry; the bundled
/// instances store absolute (fractional) units, i.e. the published percent
/// tables divided by 100, so that reported objective values are directly
/// comparable with the published optima.
#[derive(Debug, Clone, PartialEq)]
pub struct PortfolioSpec {
    asset_labels: Vec<String>,
    n_periods: usize,
    bits_per_weight: usize,
    /// Risk aversion, weight of the covariance term.
    risk_aversion: f64,
    /// Sensitivity to transaction costs.
    cost_sensitivity: f64,
    /// Importance of the budget constraint (sum of weights equal 1).
    penalty: f64,
    /// Annualized expected returns per period, length-n each.
    returns: Vec<DVector<f64>>,
    /// Annualized return covariance per period, n x n symmetric.
    covariances: Vec<DMatrix<f64>>,
    /// Unit transaction costs per period, non-negative.
    unit_costs: Vec<DVector<f64>>,
}

impl PortfolioSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        asset_labels: Vec<String>,
        bits_per_weight: usize,
        risk_aversion: f64,
        cost_sensitivity: f64,
        penalty: f64,
        returns: Vec<DVector<f64>>,
        covariances: Vec<DMatrix<f64>>,
        unit_costs: Vec<DVector<f64>>,
    ) -> Result<Self, PortfolioError> {
        let invalid = |m: String| Err(PortfolioError::InvalidSpec(m));
        let n = asset_labels.len();
        let t = returns.len();
        if n == 0 {
            return invalid("need at least one asset".into());
        }
        if t == 0 {
            return invalid("need at least one period".into());
        }
        if bits_per_weight == 0 || bits_per_weight > 53 {
            return invalid(format!("bits_per_weight {bits_per_weight} out of range"));
        }
        if !(risk_aversion >= 0.0 && cost_sensitivity >= 0.0 && penalty >= 0.0) {
            return invalid("lambda, mu and F must be non-negative".into());
        }
        if covariances.len() != t || unit_costs.len() != t {
            return invalid(format!(
                "inconsistent period counts: {} returns, {} covariances, {} cost vectors",
                t,
                covariances.len(),
                unit_costs.len()
            ));
        }
        for (idx, (r, (c, v))) in returns
            .iter()
            .zip(covariances.iter().zip(unit_costs.iter()))
            .enumerate()
        {
            if r.len() != n || v.len() != n || c.nrows() != n || c.ncols() != n {
                return invalid(format!("period {idx}: dimensions do not match asset count {n}"));
            }
            if v.iter().any(|&x| x < 0.0) {
                return invalid(format!("period {idx}: negative unit cost"));
            }
            let norm = c.amax().max(1.0);
            for i in 0..n {
                for j in (i + 1)..n {
                    if (c[(i, j)] - c[(j, i)]).abs() > 1e-12 * norm {
                        return invalid(format!(
                            "period {idx}: covariance asymmetric at ({i}, {j})"
                        ));
                    }
                }
            }
            if r.iter().any(|x| !x.is_finite())
                || v.iter().any(|x| !x.is_finite())
                || c.iter().any(|x| !x.is_finite())
            {
                return invalid(format!("period {idx}: non-finite statistic"));
            }
        }
        Ok(Self {
            asset_labels,
            n_periods: t,
            bits_per_weight,
            risk_aversion,
            cost_sensitivity,
            penalty,
            returns,
            covariances,
            unit_costs,
        })
    }

    pub fn n_assets(&self) -> usize {
        self.asset_labels.len()
    }

    pub fn n_periods(&self) -> usize {
        self.n_periods
    }

    pub fn bits_per_weight(&self) -> usize {
        self.bits_per_weight
    }

    pub fn codec(&self) -> WeightCodec {
        WeightCodec::new(self.bits_per_weight)
    }

    pub fn risk_aversion(&self) -> f64 {
        self.risk_aversion
    }

    pub fn cost_sensitivity(&self) -> f64 {
        self.cost_sensitivity
    }

    pub fn penalty(&self) -> f64 {
        self.penalty
    }

    pub fn asset_labels(&self) -> &[String] {
        &self.asset_labels
    }

    /// Returns vector of period `t` (0-based).
    pub fn returns(&self, t: usize) -> &DVector<f64> {
        &self.returns[t]
    }

    pub fn covariance(&self, t: usize) -> &DMatrix<f64> {
        &self.covariances[t]
    }

    pub fn unit_costs(&self, t: usize) -> &DVector<f64> {
        &self.unit_costs[t]
    }

    /// Total number of binary variables, `n * T * l`.
    pub fn n_bits(&self) -> usize {
        self.n_assets() * self.n_periods * self.bits_per_weight
    }

    /// Flat bit index of `(period, asset, bit)`; the layout is period-major,
    /// then asset, then bit significance (bit 0 is the 1/2 place). This order
    /// is part of the public contract: decoded weights and value registers
    /// depend on it.
    pub fn bit_index(&self, period: usize, asset: usize, bit: usize) -> usize {
        debug_assert!(period < self.n_periods);
        debug_assert!(asset < self.n_assets());
        debug_assert!(bit < self.bits_per_weight);
        (period * self.n_assets() + asset) * self.bits_per_weight + bit
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SpecFile::from(self)).expect("spec serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, PortfolioError> {
        let file: SpecFile = serde_json::from_str(json)
            .map_err(|e| PortfolioError::InvalidSpec(format!("bad spec JSON: {e}")))?;
        file.try_into()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), PortfolioError> {
        std::fs::write(path, self.to_json())
            .map_err(|e| PortfolioError::InvalidSpec(format!("cannot write spec: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, PortfolioError> {
        let json = std::fs::read_to_string(path)
            .map_err(|e| PortfolioError::InvalidSpec(format!("cannot read spec: {e}")))?;
        Self::from_json(&json)
    }
}

/// On-disk JSON layout of a spec.
#[derive(Serialize, Deserialize)]
struct SpecFile {
    assets: Vec<String>,
    lambda: f64,
    mu: f64,
    #[serde(rename = "F")]
    penalty: f64,
    bits_per_weight: usize,
    periods: Vec<PeriodFile>,
}

#[derive(Serialize, Deserialize)]
struct PeriodFile {
    returns: Vec<f64>,
    covariance: Vec<Vec<f64>>,
    costs: Vec<f64>,
}

impl From<&PortfolioSpec> for SpecFile {
    fn from(spec: &PortfolioSpec) -> Self {
        SpecFile {
            assets: spec.asset_labels.clone(),
            lambda: spec.risk_aversion,
            mu: spec.cost_sensitivity,
            penalty: spec.penalty,
            bits_per_weight: spec.bits_per_weight,
            periods: (0..spec.n_periods)
                .map(|t| PeriodFile {
                    returns: spec.returns[t].iter().copied().collect(),
                    covariance: (0..spec.n_assets())
                        .map(|i| {
                            (0..spec.n_assets())
                                .map(|j| spec.covariances[t][(i, j)])
                                .collect()
                        })
                        .collect(),
                    costs: spec.unit_costs[t].iter().copied().collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SpecFile> for PortfolioSpec {
    type Error = PortfolioError;

    fn try_from(f: SpecFile) -> Result<Self, PortfolioError> {
        let n = f.assets.len();
        let mut returns = Vec::new();
        let mut covariances = Vec::new();
        let mut unit_costs = Vec::new();
        for p in &f.periods {
            returns.push(DVector::from_vec(p.returns.clone()));
            unit_costs.push(DVector::from_vec(p.costs.clone()));
            if p.covariance.len() != n || p.covariance.iter().any(|r| r.len() != n) {
                return Err(PortfolioError::InvalidSpec(
                    "covariance rows must match asset count".into(),
                ));
            }
            covariances.push(DMatrix::from_fn(n, n, |i, j| p.covariance[i][j]));
        }
        PortfolioSpec::new(
            f.assets,
            f.bits_per_weight,
            f.lambda,
            f.mu,
            f.penalty,
            returns,
            covariances,
            unit_costs,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{dmatrix, dvector};

    pub(crate) fn tiny_spec() -> PortfolioSpec {
        PortfolioSpec::new(
            vec!["A".into(), "B".into()],
            2,
            1.0,
            0.5,
            10.0,
            vec![dvector![0.05, 0.02], dvector![0.01, 0.03]],
            vec![
                dmatrix![0.010, 0.002; 0.002, 0.008],
                dmatrix![0.012, 0.001; 0.001, 0.009],
            ],
            vec![dvector![0.002, 0.003], dvector![0.002, 0.003]],
        )
        .unwrap()
    }

    #[test]
    fn codec_decodes_binary_fractions() {
        let codec = WeightCodec::new(3);
        assert_eq!(codec.decode(&[0, 1, 1]), 0.375);
        assert_eq!(codec.decode(&[1, 1, 1]), 0.875);
        assert_eq!(codec.decode(&[0, 0, 0]), 0.0);
        assert_eq!(codec.max_weight(), 0.875);
    }

    #[test]
    fn bit_layout_is_period_major() {
        let spec = tiny_spec();
        assert_eq!(spec.n_bits(), 8);
        assert_eq!(spec.bit_index(0, 0, 0), 0);
        assert_eq!(spec.bit_index(0, 1, 0), 2);
        assert_eq!(spec.bit_index(1, 0, 1), 5);
        assert_eq!(spec.bit_index(1, 1, 1), 7);
    }

    #[test]
    fn json_roundtrip() {
        let spec = tiny_spec();
        let json = spec.to_json();
        let back = PortfolioSpec::from_json(&json).unwrap();
        assert_eq!(spec, back);
    }

    #[test]
    fn asymmetric_covariance_rejected() {
        let err = PortfolioSpec::new(
            vec!["A".into(), "B".into()],
            2,
            1.0,
            0.0,
            0.0,
            vec![dvector![0.0, 0.0]],
            vec![dmatrix![1.0, 0.5; 0.2, 1.0]],
            vec![dvector![0.0, 0.0]],
        )
        .unwrap_err();
        assert!(matches!(err, PortfolioError::InvalidSpec(_)));
    }

    #[test]
    fn negative_cost_rejected() {
        let err = PortfolioSpec::new(
            vec!["A".into()],
            2,
            1.0,
            0.0,
            0.0,
            vec![dvector![0.0]],
            vec![dmatrix![1.0]],
            vec![dvector![-0.1]],
        )
        .unwrap_err();
        assert!(matches!(err, PortfolioError::InvalidSpec(_)));
    }
}
