use std::io::Read;
use std::path::Path;

use chrono::NaiveDate;

use super::MarketError;

/// Daily bid/ask FX quotes for one currency, in ccyCZK quotation (the number
/// of CZK units one unit of the currency is worth).
#[derive(Debug, Clone)]
pub struct FxSeries {
    currency: String,
    rows: Vec<FxRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FxRow {
    pub date: NaiveDate,
    pub bid: f64,
    pub ask: f64,
}

impl FxSeries {
    /// Dates must be strictly increasing, rates positive and `bid <= ask`.
    pub fn new(currency: impl Into<String>, rows: Vec<FxRow>) -> Result<Self, MarketError> {
        let currency = currency.into();
        let invalid = |message: String| MarketError::InvalidSeries {
            currency: currency.clone(),
            message,
        };
        for w in rows.windows(2) {
            if w[1].date <= w[0].date {
                return Err(invalid(format!(
                    "dates not strictly increasing at {}",
                    w[1].date
                )));
            }
        }
        for r in &rows {
            if !(r.bid.is_finite() && r.ask.is_finite()) || r.bid <= 0.0 || r.ask <= 0.0 {
                return Err(invalid(format!("non-positive rate on {}", r.date)));
            }
            if r.bid > r.ask {
                return Err(invalid(format!("bid above ask on {}", r.date)));
            }
        }
        Ok(Self { currency, rows })
    }

    /// Parse a `date,bid,ask` CSV (ISO-8601 dates, decimal point).
    pub fn from_csv_reader(
        currency: impl Into<String>,
        reader: impl Read,
    ) -> Result<Self, MarketError> {
        let currency = currency.into();
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut rows = Vec::new();
        for (i, record) in csv.records().enumerate() {
            let record_no = i + 2; // 1-based, after the header
            let err = |message: String| MarketError::Csv {
                record: record_no,
                message,
            };
            let record = record.map_err(|e| err(e.to_string()))?;
            if record.len() != 3 {
                return Err(err(format!("expected 3 fields, got {}", record.len())));
            }
            let date = NaiveDate::parse_from_str(&record[0], "%Y-%m-%d")
                .map_err(|e| err(format!("bad date `{}`: {e}", &record[0])))?;
            let bid: f64 = record[1]
                .parse()
                .map_err(|_| err(format!("bad bid `{}`", &record[1])))?;
            let ask: f64 = record[2]
                .parse()
                .map_err(|_| err(format!("bad ask `{}`", &record[2])))?;
            rows.push(FxRow { date, bid, ask });
        }
        Self::new(currency, rows)
    }

    pub fn from_csv_path(currency: impl Into<String>, path: impl AsRef<Path>) -> Result<Self, MarketError> {
        let file = std::fs::File::open(path)?;
        Self::from_csv_reader(currency, file)
    }

    pub fn currency(&self) -> &str {
        &self.currency
    }

    pub fn rows(&self) -> &[FxRow] {
        &self.rows
    }
}

/// Mid rates `(bid + ask) / 2`, dates preserved.
pub fn mid_rates(series: &FxSeries) -> Vec<(NaiveDate, f64)> {
    series
        .rows
        .iter()
        .map(|r| (r.date, 0.5 * (r.bid + r.ask)))
        .collect()
}

/// Daily percentage returns `100 (m_t / m_{t-1} - 1)` over consecutive
/// available rows. Needs at least two observations.
pub fn daily_returns(mids: &[(NaiveDate, f64)]) -> Result<Vec<f64>, MarketError> {
    if mids.len() < 2 {
        return Err(MarketError::NotEnoughObservations);
    }
    Ok(mids
        .windows(2)
        .map(|w| 100.0 * (w[1].1 / w[0].1 - 1.0))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> NaiveDate {
        NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
    }

    fn series(rows: &[(&str, f64, f64)]) -> FxSeries {
        FxSeries::new(
            "TST",
            rows.iter()
                .map(|&(s, bid, ask)| FxRow { date: d(s), bid, ask })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn mid_is_average_of_bid_and_ask() {
        let s = series(&[("2020-01-01", 24.0, 24.2)]);
        let mids = mid_rates(&s);
        assert_eq!(mids[0].1, 24.1);
    }

    #[test]
    fn mid_equals_both_when_spread_is_zero() {
        let s = series(&[("2020-01-01", 25.5, 25.5)]);
        assert_eq!(mid_rates(&s)[0].1, 25.5);
    }

    #[test]
    fn mids_preserve_dates_and_length() {
        let s = series(&[
            ("2020-01-01", 1.0, 1.2),
            ("2020-01-02", 1.1, 1.3),
            ("2020-01-06", 1.2, 1.4),
        ]);
        let mids = mid_rates(&s);
        assert_eq!(mids.len(), 3);
        assert_eq!(mids[2].0, d("2020-01-06"));
    }

    #[test]
    fn one_percent_up_and_down() {
        let up = daily_returns(&[(d("2020-01-01"), 100.0), (d("2020-01-02"), 101.0)]).unwrap();
        assert!((up[0] - 1.0).abs() < 1e-12);
        let down = daily_returns(&[(d("2020-01-01"), 100.0), (d("2020-01-02"), 99.0)]).unwrap();
        assert!((down[0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_series_has_zero_returns() {
        let mids: Vec<_> = (1..=5)
            .map(|i| (d(&format!("2020-01-0{i}")), 42.0))
            .collect();
        assert!(daily_returns(&mids).unwrap().iter().all(|&r| r == 0.0));
    }

    #[test]
    fn single_row_is_rejected() {
        let err = daily_returns(&[(d("2020-01-01"), 1.0)]).unwrap_err();
        assert!(matches!(err, MarketError::NotEnoughObservations));
    }

    #[test]
    fn invariants_enforced() {
        assert!(FxSeries::new(
            "X",
            vec![
                FxRow { date: d("2020-01-02"), bid: 1.0, ask: 1.0 },
                FxRow { date: d("2020-01-01"), bid: 1.0, ask: 1.0 },
            ],
        )
        .is_err());
        assert!(FxSeries::new(
            "X",
            vec![FxRow { date: d("2020-01-01"), bid: 2.0, ask: 1.0 }],
        )
        .is_err());
        assert!(FxSeries::new(
            "X",
            vec![FxRow { date: d("2020-01-01"), bid: -1.0, ask: 1.0 }],
        )
        .is_err());
    }

    #[test]
    fn csv_roundtrip() {
        let csv = "date,bid,ask\n2020-01-01,24.0,24.2\n2020-01-02,24.1,24.3\n";
        let s = FxSeries::from_csv_reader("USD", csv.as_bytes()).unwrap();
        assert_eq!(s.rows().len(), 2);
        assert_eq!(s.currency(), "USD");
    }

    #[test]
    fn csv_bad_date_reports_record() {
        let csv = "date,bid,ask\n2020-01-01,24.0,24.2\nnot-a-date,24.1,24.3\n";
        let err = FxSeries::from_csv_reader("USD", csv.as_bytes()).unwrap_err();
        assert!(matches!(err, MarketError::Csv { record: 3, .. }));
    }
}
