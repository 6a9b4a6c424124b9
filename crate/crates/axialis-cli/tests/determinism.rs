//! Reports must be byte-stable for fixed inputs and seeds once the timing
//! fields are stripped, and the exit-code contract must hold end to end.

use axialis_cli::report::strip_timing;
use axialis_cli::run_captured;

fn stable_output(argv: &[&str]) -> (i32, String) {
    let (code, text) = run_captured(argv.iter().map(|s| s.to_string()));
    let mut value: serde_json::Value = serde_json::from_str(&text).expect("report is JSON");
    strip_timing(&mut value);
    (code, serde_json::to_string_pretty(&value).expect("serializes"))
}

#[test]
fn block_reports_are_byte_stable() {
    let argv = [
        "axialis", "block", "--family", "2", "--m", "3", "--k", "1", "--ell", "1", "--n", "0",
    ];
    let (code1, out1) = stable_output(&argv);
    let (code2, out2) = stable_output(&argv);
    assert_eq!(code1, 0);
    assert_eq!(code2, 0);
    assert_eq!(out1, out2);
}

#[test]
fn specfun_reports_are_byte_stable() {
    let argv = ["axialis", "specfun-selftest"];
    let (code1, out1) = stable_output(&argv);
    let (code2, out2) = stable_output(&argv);
    assert_eq!(code1, 0);
    assert_eq!(code2, 0);
    assert_eq!(out1, out2);
}

#[test]
fn usage_errors_exit_two_without_a_report() {
    let (code, out) = run_captured(["axialis", "block", "--family", "7"].map(str::to_string));
    assert_eq!(code, 2);
    assert!(out.is_empty());
}

#[test]
fn kernel_mode_round_trips_deterministically() {
    let argv = ["axialis", "decompose", "--kernel", "--m", "2", "--k", "1"];
    let (code1, out1) = stable_output(&argv);
    let (code2, out2) = stable_output(&argv);
    assert_eq!(code1, 0);
    assert_eq!(code2, 0);
    assert_eq!(out1, out2);
    let value: serde_json::Value = serde_json::from_str(&out2).expect("JSON");
    assert_eq!(value["result"]["dimension"], 2);
}
