//! Row building and rendering for the exact tables, Monte Carlo summaries,
//! and the limit report. Output comes in aligned text, CSV, and JSON.

use crate::decimal::rational_to_decimal;
use crate::error::{Error, Result};
use crate::grid::GridGraph;
use crate::mst_exact::{
    mst_balance_probability_bruteforce, mst_balance_probability_exact_with_limit, MstMethod,
    DEFAULT_EXTENSION_LIMIT,
};
use crate::sampling::{estimate_balance_probability, Distribution, MonteCarloSummary};
use crate::sequences::{
    balanced_count, limit_constant, limit_gap, tree_count, ust_balance_probability, Parity,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::json;

/// One row of the exact UST table.
#[derive(Clone, Debug)]
pub struct ExactUstRow {
    pub n: usize,
    pub tree_total: BigUint,
    pub balanced_total: BigUint,
    pub ratio: BigRational,
    pub ratio_6dp: String,
}

pub fn ust_exact_row(n: usize) -> Result<ExactUstRow> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let ratio = ust_balance_probability(n);
    let ratio_6dp = rational_to_decimal(&ratio, 6);
    Ok(ExactUstRow {
        n,
        tree_total: tree_count(n),
        balanced_total: balanced_count(n),
        ratio,
        ratio_6dp,
    })
}

pub const UST_CSV_HEADER: &str = "n,T,S,ratio_num,ratio_den,ratio_6dp";

impl ExactUstRow {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "T": self.tree_total.to_string(),
            "S": self.balanced_total.to_string(),
            "ratio_num": self.ratio.numer().to_string(),
            "ratio_den": self.ratio.denom().to_string(),
            "ratio_6dp": self.ratio_6dp,
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.tree_total,
            self.balanced_total,
            self.ratio.numer(),
            self.ratio.denom(),
            self.ratio_6dp
        )
    }

    pub fn text_line(&self) -> String {
        format!(
            "n={:<3} T={:<24} S={:<24} ratio={}/{} = {}/{} = {}",
            self.n,
            self.tree_total,
            self.balanced_total,
            self.balanced_total,
            self.tree_total,
            self.ratio.numer(),
            self.ratio.denom(),
            self.ratio_6dp
        )
    }
}

/// One exact MST value with the method that produced it.
#[derive(Clone, Debug)]
pub struct ExactMstRow {
    pub n: usize,
    pub ratio: BigRational,
    pub ratio_6dp: String,
    pub method: MstMethod,
}

pub const MST_CSV_HEADER: &str = "n,ratio_num,ratio_den,ratio_6dp,method";

impl ExactMstRow {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "ratio_num": self.ratio.numer().to_string(),
            "ratio_den": self.ratio.denom().to_string(),
            "ratio_6dp": self.ratio_6dp,
            "method": self.method.to_string(),
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            self.ratio.numer(),
            self.ratio.denom(),
            self.ratio_6dp,
            self.method
        )
    }

    pub fn text_line(&self) -> String {
        format!(
            "n={:<3} mst={}/{} = {}  (method: {})",
            self.n,
            self.ratio.numer(),
            self.ratio.denom(),
            self.ratio_6dp,
            self.method
        )
    }
}

/// How to compute an exact MST probability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MstMethodChoice {
    Auto,
    Extensions,
    Bruteforce,
}

pub fn mst_exact_row(
    n: usize,
    method: MstMethodChoice,
    extension_limit: usize,
) -> Result<ExactMstRow> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let grid = GridGraph::new(n)?;
    let (ratio, method) = match method {
        MstMethodChoice::Bruteforce => (
            mst_balance_probability_bruteforce(&grid)?,
            MstMethod::Bruteforce,
        ),
        MstMethodChoice::Extensions | MstMethodChoice::Auto => (
            mst_balance_probability_exact_with_limit(&grid, extension_limit)?,
            MstMethod::Extensions,
        ),
    };
    let ratio_6dp = rational_to_decimal(&ratio, 6);
    Ok(ExactMstRow {
        n,
        ratio,
        ratio_6dp,
        method,
    })
}

/// The MST cell of a table row: exact fraction or Monte Carlo estimate.
#[derive(Clone, Debug)]
pub enum MstCell {
    Exact {
        ratio: BigRational,
        method: MstMethod,
    },
    Approximate {
        summary: MonteCarloSummary,
    },
}

/// One table row combining the exact UST value with an MST cell.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub n: usize,
    pub ust_exact: BigRational,
    pub ust_6dp: String,
    pub mst_value: MstCell,
    pub mst_6dp: String,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub approx_marker: bool,
}

impl TableRow {
    pub fn mst_method_name(&self) -> &'static str {
        match &self.mst_value {
            MstCell::Exact { .. } => "exact",
            MstCell::Approximate { .. } => "montecarlo",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut value = json!({
            "n": self.n,
            "ust_num": self.ust_exact.numer().to_string(),
            "ust_den": self.ust_exact.denom().to_string(),
            "ust_6dp": self.ust_6dp,
            "mst_6dp": self.mst_6dp,
            "mst_method": self.mst_method_name(),
            "approx": self.approx_marker,
        });
        match &self.mst_value {
            MstCell::Exact { ratio, method } => {
                value["mst_num"] = json!(ratio.numer().to_string());
                value["mst_den"] = json!(ratio.denom().to_string());
                value["exact_method"] = json!(method.to_string());
            }
            MstCell::Approximate { summary } => {
                value["samples"] = json!(summary.samples);
                value["successes"] = json!(summary.successes);
                value["seed"] = json!(summary.seed);
            }
        }
        value
    }

    pub fn csv_row(&self) -> String {
        let (mst_num, mst_den) = match &self.mst_value {
            MstCell::Exact { ratio, .. } => {
                (ratio.numer().to_string(), ratio.denom().to_string())
            }
            MstCell::Approximate { .. } => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.ust_exact.numer(),
            self.ust_exact.denom(),
            self.ust_6dp,
            mst_num,
            mst_den,
            self.mst_6dp,
            self.mst_method_name(),
            self.samples.map_or(String::new(), |s| s.to_string()),
            self.seed.map_or(String::new(), |s| s.to_string()),
        )
    }
}

pub const TABLE_CSV_HEADER: &str =
    "n,ust_num,ust_den,ust_6dp,mst_num,mst_den,mst_6dp,mst_method,samples,seed";

/// The full even/odd table pair.
#[derive(Clone, Debug)]
pub struct BalanceTable {
    pub even: Vec<TableRow>,
    pub odd: Vec<TableRow>,
}

/// Builds the table for 2 <= n <= max_n: UST cells are always exact; MST
/// cells are exact up to `exact_mst_max` columns and Monte Carlo estimates
/// (marked "~") beyond.
pub fn build_table(
    max_n: usize,
    samples: u64,
    seed: u64,
    exact_mst_max: usize,
    extension_limit: usize,
) -> Result<BalanceTable> {
    if max_n < 2 {
        return Err(Error::invalid("table needs max_n >= 2"));
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for n in 2..=max_n {
        let ust_exact = ust_balance_probability(n);
        let ust_6dp = rational_to_decimal(&ust_exact, 6);
        let grid = GridGraph::new(n)?;
        let (mst_value, mst_6dp, row_samples, row_seed) = if n <= exact_mst_max {
            let ratio = mst_balance_probability_exact_with_limit(&grid, extension_limit)?;
            let dp = rational_to_decimal(&ratio, 6);
            (
                MstCell::Exact {
                    ratio,
                    method: MstMethod::Extensions,
                },
                dp,
                None,
                None,
            )
        } else {
            let summary =
                estimate_balance_probability(&grid, Distribution::Mst, samples, seed)?;
            let dp = summary.estimate_6dp();
            let (s, sd) = (summary.samples, summary.seed);
            (
                MstCell::Approximate { summary },
                dp,
                Some(s),
                Some(sd),
            )
        };
        let approx_marker = matches!(mst_value, MstCell::Approximate { .. });
        let row = TableRow {
            n,
            ust_exact,
            ust_6dp,
            mst_value,
            mst_6dp,
            samples: row_samples,
            seed: row_seed,
            approx_marker,
        };
        if n % 2 == 0 {
            even.push(row);
        } else {
            odd.push(row);
        }
    }
    Ok(BalanceTable { even, odd })
}

impl BalanceTable {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "even": self.even.iter().map(TableRow::to_json).collect::<Vec<_>>(),
            "odd": self.odd.iter().map(TableRow::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(TABLE_CSV_HEADER);
        out.push('\n');
        for row in self.even.iter().chain(self.odd.iter()) {
            out.push_str(&row.csv_row());
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (title, rows) in [("EVEN n", &self.even), ("ODD n", &self.odd)] {
            out.push_str(title);
            out.push('\n');
            out.push_str(&format!("{:<4} {:<26} {}\n", "n", "UST", "MST"));
            for row in rows {
                let ust = format!(
                    "{}/{} = {}",
                    row.ust_exact.numer(),
                    row.ust_exact.denom(),
                    row.ust_6dp
                );
                let mst = match &row.mst_value {
                    MstCell::Exact { ratio, .. } => format!(
                        "{}/{} = {}",
                        ratio.numer(),
                        ratio.denom(),
                        row.mst_6dp
                    ),
                    MstCell::Approximate { .. } => format!("~{}", row.mst_6dp),
                };
                out.push_str(&format!("{:<4} {:<26} {}\n", row.n, ust, mst));
            }
            out.push('\n');
        }
        out
    }
}

/// The limit report: both constants exactly and to 12 decimals, plus the
/// exact gap |ratio(n) - limit| for every n up to `max_n`.
pub fn limits_report(max_n: usize) -> String {
    let odd = limit_constant(Parity::Odd);
    let even = limit_constant(Parity::Even);
    let mut out = String::new();
    out.push_str(&format!(
        "odd-limit  = {} = {}\n",
        odd,
        odd.to_decimal(12)
    ));
    out.push_str(&format!(
        "even-limit = {} = {}\n",
        even,
        even.to_decimal(12)
    ));
    out.push('\n');
    out.push_str("n    ratio_6dp  |ratio - limit|\n");
    for n in 1..=max_n {
        let gap = limit_gap(n);
        out.push_str(&format!(
            "{:<4} {}   {:.3e}\n",
            n,
            rational_to_decimal(&ust_balance_probability(n), 6),
            gap.to_f64()
        ));
    }
    out
}

/// Output format selector shared by the CLI subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

pub fn default_extension_limit() -> usize {
    DEFAULT_EXTENSION_LIMIT
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn ust_rows_match_published_values() {
        let row = ust_exact_row(5).unwrap();
        assert_eq!(row.tree_total, BigUint::from(209u32));
        assert_eq!(row.balanced_total, BigUint::from(111u32));
        assert_eq!(row.ratio, ratio(111, 209));
        assert_eq!(row.ratio_6dp, "0.531100");
        let row1 = ust_exact_row(1).unwrap();
        assert_eq!(row1.ratio, ratio(1, 1));
        assert_eq!(ust_exact_row(18).unwrap().ratio_6dp, "0.762892");
    }

    #[test]
    fn ust_json_schema_is_pinned() {
        let row = ust_exact_row(3).unwrap();
        let value = row.to_json();
        assert_eq!(value["n"], 3);
        assert_eq!(value["T"], "15");
        assert_eq!(value["S"], "9");
        assert_eq!(value["ratio_num"], "3");
        assert_eq!(value["ratio_den"], "5");
        assert_eq!(value["ratio_6dp"], "0.600000");
    }

    #[test]
    fn mst_rows_agree_between_methods() {
        let a = mst_exact_row(4, MstMethodChoice::Extensions, 22).unwrap();
        let b = mst_exact_row(4, MstMethodChoice::Bruteforce, 22).unwrap();
        assert_eq!(a.ratio, b.ratio);
        assert_eq!(a.ratio, ratio(248, 315));
        assert_eq!(a.method, MstMethod::Extensions);
        assert_eq!(b.method, MstMethod::Bruteforce);
    }

    #[test]
    fn small_table_is_all_exact() {
        let table = build_table(5, 10, 1, 5, 22).unwrap();
        assert_eq!(table.even.len(), 2);
        assert_eq!(table.odd.len(), 2);
        for row in table.even.iter().chain(table.odd.iter()) {
            assert!(!row.approx_marker);
            assert!(matches!(row.mst_value, MstCell::Exact { .. }));
        }
        let text = table.to_text();
        assert!(text.contains("11/14 = 0.785714"), "{text}");
        assert!(text.contains("248/315 = 0.787302"), "{text}");
        assert!(!text.contains('~'), "{text}");
    }

    #[test]
    fn minimal_table_has_one_even_row() {
        let table = build_table(2, 10, 1, 5, 22).unwrap();
        assert_eq!(table.even.len(), 1);
        assert!(table.odd.is_empty());
        assert_eq!(table.even[0].ust_6dp, "1.000000");
        assert_eq!(table.even[0].mst_6dp, "1.000000");
    }

    #[test]
    fn monte_carlo_rows_carry_the_marker() {
        let table = build_table(6, 2_000, 7, 5, 22).unwrap();
        let row6 = table.even.iter().find(|r| r.n == 6).unwrap();
        assert!(row6.approx_marker);
        assert_eq!(row6.samples, Some(2_000));
        assert_eq!(row6.seed, Some(7));
        assert!(table.to_text().contains('~'));
        assert_eq!(row6.mst_method_name(), "montecarlo");
    }

    #[test]
    fn limits_report_prints_both_constants() {
        let report = limits_report(9);
        assert!(report.contains("0.525783423063"), "{report}");
        assert!(report.contains("0.762891711532"), "{report}");
        assert!(report.contains("1/3 + 1/9*sqrt(3)"), "{report}");
        assert!(report.contains("2/3 + 1/18*sqrt(3)"), "{report}");
        // the n=9 row carries the expected 2.2e-5 gap
        assert!(report.contains("2.192e-5"), "{report}");
    }

    #[test]
    fn table_rejects_tiny_max_n() {
        assert!(build_table(1, 10, 1, 5, 22).is_err());
    }
}
