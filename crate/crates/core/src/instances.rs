//! The three bundled problem instances.
//!
//! Statistics come from the bundled crisis tables (percent units) and are
//! converted to absolute fractions here, so objective values live on the
//! same scale as the published benchmark optima (0.088 toy, 0.0177 testing,
//! 0.0921 practical). Model parameters: risk aversion 10, transaction-cost
//! sensitivity 20, budget-constraint weight 100.
//!
//! The single-period instances carry no transaction-cost term (`mu = 0`):
//! with one period there is no rebalancing to charge, and their benchmark
//! optima are pure mean-variance values. The practical three-period
//! instance uses `mu = 20`, with the initial allocation out of cash paying
//! full costs.

use nalgebra::{DMatrix, DVector};

use crate::market::{bundled_stats, CrisisPeriod, PeriodStats};
use crate::portfolio::PortfolioSpec;

pub const RISK_AVERSION: f64 = 10.0;
pub const COST_SENSITIVITY: f64 = 20.0;
pub const BUDGET_PENALTY: f64 = 100.0;

fn to_fraction(stats: &PeriodStats) -> (DVector<f64>, DMatrix<f64>, DVector<f64>) {
    let n = stats.len();
    let returns = DVector::from_fn(n, |i, _| stats.returns[i] / 100.0);
    let costs = DVector::from_fn(n, |i, _| stats.costs[i] / 100.0);
    let cov = DMatrix::from_fn(n, n, |i, j| stats.covariance[i][j] / 100.0);
    (returns, cov, costs)
}

/// Toy instance: AUD, CAD and gold over the debt-crisis window, one period,
/// 3 bits per weight. Intended for [`crate::portfolio::build_toy_qubo`]
/// (6 binary variables after eliminating the gold weight).
pub fn toy_spec() -> PortfolioSpec {
    let stats = bundled_stats(CrisisPeriod::DebtCrisis)
        .select(&["AUD", "CAD", "Gold"])
        .expect("bundled labels include the toy subset");
    let (r, c, nu) = to_fraction(&stats);
    PortfolioSpec::new(
        stats.labels.clone(),
        3,
        RISK_AVERSION,
        0.0,
        BUDGET_PENALTY,
        vec![r],
        vec![c],
        vec![nu],
    )
    .expect("toy spec is valid")
}

/// Testing instance: all nine currencies over the Great Recession window,
/// one period, 10 bits per weight (90 binary variables).
pub fn testing_spec() -> PortfolioSpec {
    let stats = bundled_stats(CrisisPeriod::GreatRecession);
    let (r, c, nu) = to_fraction(stats);
    PortfolioSpec::new(
        stats.labels.clone(),
        10,
        RISK_AVERSION,
        0.0,
        BUDGET_PENALTY,
        vec![r],
        vec![c],
        vec![nu],
    )
    .expect("testing spec is valid")
}

/// Practical instance: all nine currencies over the three crisis windows in
/// chronological order, 14 bits per weight (378 binary variables).
pub fn practical_spec() -> PortfolioSpec {
    let periods = [
        CrisisPeriod::GreatRecession,
        CrisisPeriod::DebtCrisis,
        CrisisPeriod::Covid,
    ];
    let mut returns = Vec::new();
    let mut covs = Vec::new();
    let mut costs = Vec::new();
    let mut labels = Vec::new();
    for p in periods {
        let stats = bundled_stats(p);
        let (r, c, nu) = to_fraction(stats);
        returns.push(r);
        covs.push(c);
        costs.push(nu);
        labels = stats.labels.clone();
    }
    PortfolioSpec::new(
        labels,
        14,
        RISK_AVERSION,
        COST_SENSITIVITY,
        BUDGET_PENALTY,
        returns,
        covs,
        costs,
    )
    .expect("practical spec is valid")
}
