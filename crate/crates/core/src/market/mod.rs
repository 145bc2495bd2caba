//! FX market data: bid/ask series ingestion, the return/cost/covariance
//! statistics pipeline, and the bundled crisis-window datasets.

mod bundled;
mod series;
mod stats;

pub use bundled::{bundled_checksums, bundled_stats, CrisisPeriod};
pub use series::{daily_returns, mid_rates, FxSeries};
pub use stats::{period_stats, PeriodStats, DEFAULT_TRADING_DAYS};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MarketError {
    #[error("invalid series for {currency}: {message}")]
    InvalidSeries { currency: String, message: String },

    #[error("series for {currency} does not cover the requested window")]
    InsufficientCoverage { currency: String },

    #[error("fewer than two usable observations across the requested window")]
    NotEnoughObservations,

    #[error("csv parse error at record {record}: {message}")]
    Csv { record: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
