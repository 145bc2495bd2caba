use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use super::PeriodStats;

/// The three crisis windows shipped with the crate.
///
/// Each carries the published annualized return, cost and covariance tables
/// (percent units) for USD, EUR, AUD, CAD, GBP, SEK, JPY, CNY and gold,
/// measured against CZK. The troughs anchoring the windows are 9 March 2009,
/// 22 September 2011 and 18 March 2020.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrisisPeriod {
    GreatRecession,
    DebtCrisis,
    Covid,
}

const GREAT_RECESSION_JSON: &str = include_str!("../../data/great_recession.json");
const DEBT_CRISIS_JSON: &str = include_str!("../../data/debt_crisis.json");
const COVID_JSON: &str = include_str!("../../data/covid.json");

#[derive(serde::Deserialize)]
struct BundledFile {
    #[allow(dead_code)]
    period: String,
    labels: Vec<String>,
    returns_pct: Vec<f64>,
    costs_pct: Vec<f64>,
    covariance_pct: Vec<Vec<f64>>,
}

fn parse(json: &str) -> PeriodStats {
    let f: BundledFile = serde_json::from_str(json).expect("bundled dataset is valid JSON");
    PeriodStats {
        labels: f.labels,
        returns: f.returns_pct,
        costs: f.costs_pct,
        covariance: f.covariance_pct,
    }
}

/// Transcribed statistics for one crisis window, verbatim in percent units.
pub fn bundled_stats(period: CrisisPeriod) -> &'static PeriodStats {
    static GR: OnceLock<PeriodStats> = OnceLock::new();
    static DC: OnceLock<PeriodStats> = OnceLock::new();
    static CV: OnceLock<PeriodStats> = OnceLock::new();
    match period {
        CrisisPeriod::GreatRecession => GR.get_or_init(|| parse(GREAT_RECESSION_JSON)),
        CrisisPeriod::DebtCrisis => DC.get_or_init(|| parse(DEBT_CRISIS_JSON)),
        CrisisPeriod::Covid => CV.get_or_init(|| parse(COVID_JSON)),
    }
}

/// SHA-256 of each bundled dataset file, for transcription integrity checks.
pub fn bundled_checksums() -> [(CrisisPeriod, String); 3] {
    let hex = |s: &str| {
        let digest = Sha256::digest(s.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect::<String>()
    };
    [
        (CrisisPeriod::GreatRecession, hex(GREAT_RECESSION_JSON)),
        (CrisisPeriod::DebtCrisis, hex(DEBT_CRISIS_JSON)),
        (CrisisPeriod::Covid, hex(COVID_JSON)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn great_recession_aud_return() {
        let stats = bundled_stats(CrisisPeriod::GreatRecession);
        let aud = stats.labels.iter().position(|l| l == "AUD").unwrap();
        assert_eq!(stats.returns[aud], 5.00);
    }

    #[test]
    fn debt_crisis_jpy_cost() {
        let stats = bundled_stats(CrisisPeriod::DebtCrisis);
        let jpy = stats.labels.iter().position(|l| l == "JPY").unwrap();
        assert_eq!(stats.costs[jpy], 0.13);
    }

    #[test]
    fn covid_gold_variance() {
        let stats = bundled_stats(CrisisPeriod::Covid);
        let gold = stats.labels.iter().position(|l| l == "Gold").unwrap();
        assert_eq!(stats.covariance[gold][gold], 2.45);
    }

    #[test]
    fn transcription_shape_and_symmetry() {
        for period in [
            CrisisPeriod::GreatRecession,
            CrisisPeriod::DebtCrisis,
            CrisisPeriod::Covid,
        ] {
            let stats = bundled_stats(period);
            assert_eq!(stats.labels.len(), 9);
            assert_eq!(stats.returns.len(), 9);
            assert_eq!(stats.costs.len(), 9);
            assert_eq!(stats.covariance.len(), 9);
            for (i, row) in stats.covariance.iter().enumerate() {
                assert_eq!(row.len(), 9);
                for j in 0..9 {
                    assert_eq!(
                        stats.covariance[i][j], stats.covariance[j][i],
                        "{period:?} covariance asymmetric at ({i}, {j})"
                    );
                }
                assert!(row[i] >= 0.0);
            }
            assert!(stats.costs.iter().all(|&c| c >= 0.0));
        }
    }

    #[test]
    fn select_reorders_consistently() {
        let toy = bundled_stats(CrisisPeriod::DebtCrisis)
            .select(&["AUD", "CAD", "Gold"])
            .unwrap();
        assert_eq!(toy.labels, ["AUD", "CAD", "Gold"]);
        assert_eq!(toy.returns, [0.84, 0.89, 1.40]);
        assert_eq!(toy.covariance[0][2], 0.70); // AUD-Gold
        assert_eq!(toy.covariance[2][1], 0.65); // Gold-CAD
    }
}
