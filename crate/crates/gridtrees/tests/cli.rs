//! End-to-end checks of the command-line surface: output formats, flag
//! handling, and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridtrees"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn ust_exact_json_uses_the_pinned_schema() {
    let output = run(&["ust-exact", "--n", "5", "--format", "json"]);
    assert!(output.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let row = &rows[0];
    assert_eq!(row["n"], 5);
    assert_eq!(row["T"], "209");
    assert_eq!(row["S"], "111");
    assert_eq!(row["ratio_num"], "111");
    assert_eq!(row["ratio_den"], "209");
    assert_eq!(row["ratio_6dp"], "0.531100");
}

#[test]
fn ust_exact_range_emits_csv_rows() {
    let output = run(&["ust-exact", "--max-n", "4", "--format", "csv"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,T,S,ratio_num,ratio_den,ratio_6dp"));
    assert_eq!(lines.next(), Some("1,1,1,1,1,1.000000"));
    assert_eq!(lines.next(), Some("2,4,4,1,1,1.000000"));
    assert_eq!(lines.next(), Some("3,15,9,3,5,0.600000"));
    assert_eq!(lines.next(), Some("4,56,44,11,14,0.785714"));
}

#[test]
fn mst_exact_reports_fraction_and_method() {
    let output = run(&["mst-exact", "--n", "3", "--format", "json"]);
    assert!(output.status.success());
    let row: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(row["ratio_num"], "4");
    assert_eq!(row["ratio_den"], "7");
    assert_eq!(row["ratio_6dp"], "0.571429");
    assert_eq!(row["method"], "extensions");

    let brute = run(&["mst-exact", "--n", "3", "--method", "bruteforce", "--format", "json"]);
    assert!(brute.status.success());
    let row: serde_json::Value = serde_json::from_str(&stdout(&brute)).unwrap();
    assert_eq!(row["ratio_num"], "4");
    assert_eq!(row["method"], "bruteforce");
}

#[test]
fn sample_csv_is_seed_stable() {
    let args = [
        "sample", "--n", "2", "--dist", "ust", "--samples", "50", "--seed", "3",
        "--format", "csv",
    ];
    let first = run(&args);
    assert!(first.status.success());
    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,dist,samples,successes,estimate6dp,stderr,ci_low,ci_high,seed")
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("2,ust,50,50,1.000000,"), "{row}");
    assert_eq!(text, stdout(&run(&args)));
}

#[test]
fn small_table_text_shows_exact_fractions_only() {
    let output = run(&["table", "--max-n", "5", "--samples", "10", "--seed", "1"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("EVEN n"), "{text}");
    assert!(text.contains("ODD n"), "{text}");
    assert!(text.contains("11/14 = 0.785714"), "{text}");
    assert!(text.contains("248/315 = 0.787302"), "{text}");
    assert!(text.contains("111/209 = 0.531100"), "{text}");
    assert!(text.contains("70052/135135 = 0.518385"), "{text}");
    assert!(!text.contains('~'), "{text}");
}

#[test]
fn table_marks_monte_carlo_cells() {
    let output = run(&[
        "table", "--max-n", "6", "--samples", "2000", "--seed", "7", "--format", "csv",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    let row6 = text
        .lines()
        .find(|line| line.starts_with("6,"))
        .expect("row for n=6");
    assert!(row6.contains("montecarlo"), "{row6}");
    assert!(row6.contains("2000"), "{row6}");
}

#[test]
fn limits_prints_exact_constants() {
    let output = run(&["limits", "--max-n", "9"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("1/3 + 1/9*sqrt(3)"), "{text}");
    assert!(text.contains("0.525783423063"), "{text}");
    assert!(text.contains("2/3 + 1/18*sqrt(3)"), "{text}");
    assert!(text.contains("0.762891711532"), "{text}");
}

#[test]
fn missing_selector_is_a_usage_error() {
    let output = run(&["ust-exact"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let output = run(&["ust-exact", "--n", "3", "--frobnicate"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn zero_n_is_a_usage_error() {
    let output = run(&["ust-exact", "--n", "0"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn oversized_bruteforce_hits_the_resource_limit_code() {
    let output = run(&["mst-exact", "--n", "5", "--method", "bruteforce"]);
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("extension"), "{err}");
}

#[test]
fn verify_small_passes() {
    let output = run(&["verify", "--max-n", "2"]);
    assert!(output.status.success(), "{}", stdout(&output));
    let text = stdout(&output);
    assert!(text.contains("ok   series-identities"), "{text}");
    assert!(text.lines().last().unwrap().starts_with("PASS"), "{text}");
}

#[test]
fn help_exits_zero() {
    let output = run(&["--help"]);
    assert!(output.status.success());
}
