use std::process::{Command, Output};

use serde_json::Value;

use cauchy_lu::{Polynomial, Rational, RationalFunction};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cauchy-lu")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn det_prints_exact_value_with_oracle() {
    let out = run(&["det", "--s", "2", "--t", "1/1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("32/525"));
    assert!(text.contains("(match)"));
}

#[test]
fn det_defaults_to_t_one() {
    assert_eq!(stdout(&run(&["det", "--s", "1"])).lines().next(), Some("1/3"));
}

#[test]
fn det_rejects_zero_size_as_usage_error() {
    assert_eq!(run(&["det", "--s", "0"]).status.code(), Some(2));
}

#[test]
fn det_rejects_decimal_t() {
    assert_eq!(run(&["det", "--s", "2", "--t", "0.5"]).status.code(), Some(2));
}

#[test]
fn det_names_singular_entry() {
    let out = run(&["det", "--s", "1", "--t", "2/1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("SingularEntry"), "{err}");
    assert!(err.contains("(1,1)"), "{err}");
}

#[test]
fn det_zero_pivot_is_not_an_error_for_the_determinant() {
    // t = 0 is a valid matrix of rank one
    let out = run(&["det", "--s", "3", "--t", "0"]);
    assert_eq!(stdout(&out).lines().next(), Some("0"));
}

#[test]
fn lu_symbolic_matches_golden_file() {
    let out = run(&["lu", "--s", "1", "--symbolic"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), include_str!("golden/lu_s1_symbolic.txt"));
    // the default mode is symbolic
    assert_eq!(stdout(&run(&["lu", "--s", "1"])), include_str!("golden/lu_s1_symbolic.txt"));
}

#[test]
fn lu_compare_reports_match() {
    let out = run(&["lu", "--s", "2", "--t", "1/1", "--compare"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("verdict: match\n"));
}

#[test]
fn lu_compare_singular_sample() {
    let out = run(&["lu", "--s", "2", "--t", "2/3", "--compare"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("SingularEntry") && err.contains("(2,1)"), "{err}");
}

#[test]
fn lu_injected_fault_reports_mismatch() {
    let out = run(&["--inject-fault", "u-base-fifteen", "lu", "--s", "2", "--t", "1/1", "--compare"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).ends_with("verdict: mismatch\n"));
}

#[test]
fn chain_table_rows() {
    let out = run(&["chain", "--s", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows[0], ["1", "1/3", "1/3", "1/3", "1/3", "1/3", "1/3", "agree"].join("\t"));
    assert_eq!(rows[1], ["2", "32/525", "32/525", "32/525", "32/525", "32/525", "32/525", "agree"].join("\t"));
}

#[test]
fn chain_json_is_row_array() {
    let v = json(&["chain", "--s", "1", "--json"]);
    assert_eq!(v, serde_json::json!([{"s": 1, "values": ["1/3", "1/3", "1/3", "1/3", "1/3", "1/3"], "agree": true}]));
}

#[test]
fn chain_fault_exits_nonzero() {
    for fault in ["e3-exponent-shift", "e3-base-thirty-two"] {
        assert_eq!(run(&["--inject-fault", fault, "chain", "--s", "3"]).status.code(), Some(1), "{fault}");
    }
}

#[test]
fn verify_small_config_passes_and_skips() {
    let args = [
        "verify", "--json", "--s-max-symbolic", "0", "--s-max-numeric", "3", "--samples", "2", "--gamma-max", "2",
        "--chain-s-max", "3",
    ];
    let v = json(&args);
    assert_eq!(v["passed"], true);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 6);
    let skipped: Vec<bool> = reports.iter().map(|r| r["skipped"].as_bool().unwrap()).collect();
    assert_eq!(skipped, [true, false, true, false, false, false]);
    assert!(reports.iter().all(|r| r["elapsed_ms"].is_null()));
}

#[test]
fn verify_timings_flag_fills_elapsed() {
    let v = json(&["verify", "--json", "--timings", "--s-max-numeric", "2", "--samples", "1", "--s-max-symbolic", "1"]);
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["elapsed_ms"].is_u64()));
}

#[test]
fn verify_fault_exits_one_with_counterexample() {
    let out = run(&[
        "--inject-fault", "u-base-fifteen", "verify", "--json", "--s-max-symbolic", "2", "--s-max-numeric", "2",
        "--samples", "1", "--gamma-max", "1", "--chain-s-max", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let factors = &v["reports"][2];
    assert_eq!(factors["suite"], "factors-match");
    assert_eq!(factors["passed"], false);
    assert!(factors["counterexample"]["lhs"].is_string());
}

#[test]
fn bench_single_row() {
    let out = run(&["bench", "--s", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn bench_mismatch_stops_before_timings() {
    let out = run(&["--inject-fault", "u-base-fifteen", "bench", "--s", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn json_values_round_trip_through_text_formats() {
    let det = json(&["det", "--s", "3", "--t", "3/7", "--json"]);
    let value: Rational = det["determinant"].as_str().unwrap().parse().unwrap();
    assert_eq!(value.to_string(), det["determinant"]);
    assert_eq!(det["oracle"]["matches"], true);

    let sym = json(&["det", "--s", "2", "--symbolic", "--json"]);
    let text = sym["determinant"].as_str().unwrap();
    assert_eq!(text.parse::<RationalFunction>().unwrap().to_string(), text);

    let lu = json(&["lu", "--s", "3", "--symbolic", "--json"]);
    for name in ["L", "U"] {
        for row in lu["closed_form"][name].as_array().unwrap() {
            for entry in row.as_array().unwrap() {
                let text = entry.as_str().unwrap();
                assert_eq!(text.parse::<RationalFunction>().unwrap().to_string(), text);
            }
        }
    }
    let p: Polynomial = "9*t^2 - 4".parse().unwrap();
    assert_eq!(p.to_string(), "9*t^2 - 4");
}
