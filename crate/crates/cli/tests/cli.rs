//! End-to-end runs of the `braidline` binary: output bytes, exit codes and
//! stderr diagnostics.

use std::path::Path;
use std::process::{Command, Output};

fn braidline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidline"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_line(args: &[&str]) -> String {
    let out = braidline(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn error_kind(out: &Output) -> String {
    let diag: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr should be one JSON object");
    diag["error"]["kind"].as_str().expect("kind should be a string").to_owned()
}

#[test]
fn transform_l2p_matches_the_gl22_table() {
    assert_eq!(
        stdout_line(&["transform", "l2p", "--d", "2", "--q", "2", "--l", "1,1,1"]),
        "{\"d\":2,\"q\":\"2\",\"P\":[\"1/3\",\"1/2\",\"1/6\"]}\n"
    );
}

#[test]
fn transform_round_trips_inline_vectors() {
    assert_eq!(
        stdout_line(&["transform", "p2l", "--d", "2", "--q", "2", "--p", "1/3,1/2,1/6"]),
        "{\"d\":2,\"q\":\"2\",\"L\":[\"1\",\"1\",\"1\"]}\n"
    );
}

#[test]
fn transform_handles_the_zero_dimensional_case() {
    assert_eq!(
        stdout_line(&["transform", "l2p", "--d", "0", "--q", "7/3", "--l", "1"]),
        "{\"d\":0,\"q\":\"7/3\",\"P\":[\"1\"]}\n"
    );
}

#[test]
fn transform_reads_and_writes_files() {
    let dir = std::env::temp_dir().join(format!("braidline-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    let output = dir.join("out.json");
    std::fs::write(&input, "{\"d\": 2, \"q\": \"2\", \"L\": [\"1\", \"1\", \"1\"]}").unwrap();

    let run = braidline(&[
        "transform",
        "l2p",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    assert!(run.stdout.is_empty(), "JSON should go to the file, not stdout");
    assert_eq!(
        std::fs::read_to_string(&output).unwrap(),
        "{\"d\":2,\"q\":\"2\",\"P\":[\"1/3\",\"1/2\",\"1/6\"]}\n"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn transform_rejects_a_vector_key_that_contradicts_the_direction() {
    let dir = std::env::temp_dir().join(format!("braidline-cli-key-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    std::fs::write(&input, "{\"d\": 1, \"q\": \"2\", \"P\": [\"1\", \"0\"]}").unwrap();
    let out = braidline(&["transform", "l2p", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "invalid-input");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn degenerate_q_exits_2_with_a_diagnostic() {
    let out = braidline(&["transform", "l2p", "--d", "2", "--q", "1", "--l", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(error_kind(&out), "degenerate-q");
}

#[test]
fn malformed_rationals_and_length_mismatch_exit_2() {
    let bad_rat = braidline(&["transform", "l2p", "--d", "1", "--q", "2", "--l", "1,x"]);
    assert_eq!(bad_rat.status.code(), Some(2));
    assert_eq!(error_kind(&bad_rat), "invalid-rational");

    let bad_len = braidline(&["transform", "l2p", "--d", "2", "--q", "2", "--l", "1,1"]);
    assert_eq!(bad_len.status.code(), Some(2));
    assert_eq!(error_kind(&bad_len), "dimension-mismatch");
}

#[test]
fn glstats_reports_the_full_general_linear_group() {
    assert_eq!(
        stdout_line(&["glstats", "--d", "2", "--q", "2"]),
        concat!(
            "{\"d\":2,\"q\":\"2\",\"order\":6,\"P\":[\"1/3\",\"1/2\",\"1/6\"],",
            "\"L_burnside\":[\"1\",\"1\",\"1\"],\"L_direct\":[\"1\",\"1\",\"1\"],",
            "\"transform_consistent\":true,\"P0_matches_qexp\":true}\n"
        )
    );
}

#[test]
fn glstats_enumerates_generators_from_a_file() {
    let dir = std::env::temp_dir().join(format!("braidline-cli-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cyclic.json");
    std::fs::write(&path, "{\"d\": 2, \"p\": 3, \"generators\": [[[1,1],[0,1]]]}").unwrap();
    let line = stdout_line(&["glstats", "--generators", path.to_str().unwrap()]);
    let parsed: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(parsed["order"], 3);
    assert_eq!(parsed["P"][0], "0");
    assert_eq!(parsed["L_burnside"], serde_json::json!(["1", "4", "16"]));
    assert_eq!(parsed["transform_consistent"], true);
    // A proper subgroup: the series comparison must not even be present.
    assert!(parsed.get("P0_matches_qexp").is_none());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn glstats_order_bound_exits_3() {
    let out = braidline(&["glstats", "--d", "3", "--q", "2", "--max-order", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_kind(&out), "order-bound-exceeded");
}

#[test]
fn glstats_tuple_budget_turns_l_direct_null_without_failing() {
    let line = stdout_line(&["glstats", "--d", "3", "--q", "2", "--max-tuples", "10"]);
    let parsed: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(parsed["order"], 168);
    assert!(parsed["L_direct"].is_null());
    assert_eq!(parsed["transform_consistent"], true);
}

#[test]
fn qexp_prints_exact_value_and_decimal() {
    assert_eq!(
        stdout_line(&["qexp", "--d", "2", "--q", "2"]),
        "{\"d\":2,\"q\":\"2\",\"value\":\"1/3\",\"decimal\":\"0.333333333333\"}\n"
    );
    assert_eq!(
        stdout_line(&["qexp", "--d", "1", "--q", "3"]),
        "{\"d\":1,\"q\":\"3\",\"value\":\"1/2\",\"decimal\":\"0.500000000000\"}\n"
    );
    let degenerate = braidline(&["qexp", "--d", "2", "--q", "1"]);
    assert_eq!(degenerate.status.code(), Some(2));
    assert_eq!(error_kind(&degenerate), "degenerate-q");
}

#[test]
fn check_passes_and_reports_every_identity() {
    let line = stdout_line(&["check", "--max-degree", "5", "--q", "2,3/2"]);
    let reports: Vec<serde_json::Value> = serde_json::from_str(&line).unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["status"] == "pass"));
    let qs: std::collections::BTreeSet<&str> =
        reports.iter().map(|r| r["q"].as_str().unwrap()).collect();
    assert_eq!(qs.into_iter().collect::<Vec<_>>(), ["2", "3/2"]);
}

#[test]
fn check_marks_degenerate_q_as_skipped_not_failed() {
    let line = stdout_line(&["check", "--max-degree", "5", "--q", "1"]);
    let reports: Vec<serde_json::Value> = serde_json::from_str(&line).unwrap();
    assert!(reports.iter().any(|r| r["status"] == "skipped-degenerate"));
    assert!(reports.iter().all(|r| r["status"] != "fail"));
}

#[test]
fn check_rejects_max_degree_zero() {
    let out = braidline(&["check", "--max-degree", "0", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "invalid-input");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let cases: [&[&str]; 4] = [
        &["transform", "l2p", "--d", "3", "--q", "5/2", "--l", "1,2,3/7,-4"],
        &["glstats", "--d", "2", "--q", "3"],
        &["qexp", "--d", "4", "--q", "3/2"],
        &["check", "--max-degree", "4", "--q", "2,1/2,-3"],
    ];
    for args in cases {
        assert_eq!(stdout_line(args), stdout_line(args), "unstable output for {args:?}");
    }
}

#[test]
fn pretty_appends_a_table_after_unchanged_json() {
    let plain = stdout_line(&["glstats", "--d", "2", "--q", "2"]);
    let pretty = stdout_line(&["glstats", "--d", "2", "--q", "2", "--pretty"]);
    let first_line = pretty.lines().next().unwrap();
    assert_eq!(format!("{first_line}\n"), plain);
    assert!(pretty.lines().count() > 1, "--pretty should add a table");
}

#[test]
fn usage_errors_exit_2() {
    let unknown = braidline(&["no-such-command"]);
    assert_eq!(unknown.status.code(), Some(2));
    let missing = braidline(&["transform", "l2p", "--d", "2", "--q", "2"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn missing_files_exit_2() {
    let path = Path::new("/nonexistent/braidline-input.json");
    let out = braidline(&["transform", "l2p", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "io");
}
