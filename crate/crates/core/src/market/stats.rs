use chrono::{Days, NaiveDate};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{daily_returns, FxSeries, MarketError};

/// Conventional trading-day count used to annualize daily statistics.
pub const DEFAULT_TRADING_DAYS: f64 = 252.0;

/// Expected returns, average transaction costs and return covariance for one
/// time window, in percent (matching the bundled published tables).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeriodStats {
    pub labels: Vec<String>,
    /// Annualized expected returns, %.
    pub returns: Vec<f64>,
    /// Average relative bid/ask spreads, % (not annualized).
    pub costs: Vec<f64>,
    /// Annualized covariance of daily returns, row-major n x n, %.
    pub covariance: Vec<Vec<f64>>,
}

impl PeriodStats {
    pub fn len(&self) -> usize {
        self.returns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.returns.is_empty()
    }

    pub fn covariance_matrix(&self) -> DMatrix<f64> {
        let n = self.covariance.len();
        DMatrix::from_fn(n, n, |i, j| self.covariance[i][j])
    }

    pub fn returns_vector(&self) -> DVector<f64> {
        DVector::from_vec(self.returns.clone())
    }

    pub fn costs_vector(&self) -> DVector<f64> {
        DVector::from_vec(self.costs.clone())
    }

    /// Subset of the statistics restricted to the named currencies, in the
    /// given order.
    pub fn select(&self, currencies: &[&str]) -> Option<PeriodStats> {
        let idx: Option<Vec<usize>> = currencies
            .iter()
            .map(|c| self.labels.iter().position(|l| l == c))
            .collect();
        let idx = idx?;
        Some(PeriodStats {
            labels: currencies.iter().map(|s| s.to_string()).collect(),
            returns: idx.iter().map(|&i| self.returns[i]).collect(),
            costs: idx.iter().map(|&i| self.costs[i]).collect(),
            covariance: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.covariance[i][j]).collect())
                .collect(),
        })
    }
}

/// Compute window statistics from raw bid/ask series.
///
/// The window starts at `start` (inclusive, the day the crisis trough was
/// reached) and spans `window_years` calendar years, truncated at the end of
/// the data. Returns are averaged daily percentage moves scaled by
/// `trading_days_per_year`; the covariance is the unbiased sample covariance
/// of daily returns scaled by the same factor; costs are plain averages of
/// the relative spread `100 (ask - bid) / mid`.
///
/// Series are aligned on the dates available in every series, so occasional
/// missing days (weekends, holidays) simply chain consecutive observations.
pub fn period_stats(
    series: &[FxSeries],
    start: NaiveDate,
    window_years: f64,
    trading_days_per_year: f64,
) -> Result<PeriodStats, MarketError> {
    assert!(!series.is_empty(), "need at least one series");
    let end = start
        .checked_add_days(Days::new((window_years * 365.25).round() as u64))
        .expect("window end date overflow");

    // Common date grid within [start, end); every currency must have at
    // least two observations there.
    let mut common: Option<Vec<NaiveDate>> = None;
    for s in series {
        let dates: Vec<NaiveDate> = s
            .rows()
            .iter()
            .map(|r| r.date)
            .filter(|d| *d >= start && *d < end)
            .collect();
        if dates.len() < 2 {
            return Err(MarketError::InsufficientCoverage {
                currency: s.currency().to_string(),
            });
        }
        common = Some(match common {
            None => dates,
            Some(prev) => prev.into_iter().filter(|d| dates.contains(d)).collect(),
        });
    }
    let grid = common.unwrap();
    if grid.len() < 2 {
        return Err(MarketError::NotEnoughObservations);
    }

    let n = series.len();
    let mut returns_by_ccy: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut costs = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for s in series {
        let mut mids = Vec::with_capacity(grid.len());
        let mut spread_sum = 0.0;
        for r in s.rows() {
            if grid.binary_search(&r.date).is_ok() {
                let mid = 0.5 * (r.bid + r.ask);
                mids.push((r.date, mid));
                spread_sum += 100.0 * (r.ask - r.bid) / mid;
            }
        }
        returns_by_ccy.push(daily_returns(&mids)?);
        costs.push(spread_sum / grid.len() as f64);
        labels.push(s.currency().to_string());
    }

    let t = returns_by_ccy[0].len();
    let means: Vec<f64> = returns_by_ccy
        .iter()
        .map(|r| r.iter().sum::<f64>() / t as f64)
        .collect();
    let annualized_returns: Vec<f64> =
        means.iter().map(|m| m * trading_days_per_year).collect();

    let mut covariance = vec![vec![0.0; n]; n];
    if t > 1 {
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for k in 0..t {
                    acc += (returns_by_ccy[i][k] - means[i]) * (returns_by_ccy[j][k] - means[j]);
                }
                let cov = acc / (t - 1) as f64 * trading_days_per_year;
                covariance[i][j] = cov;
                covariance[j][i] = cov;
            }
        }
    }

    Ok(PeriodStats {
        labels,
        returns: annualized_returns,
        costs,
        covariance,
    })
}
