//! End-to-end tests of the `fourfold` binary: subcommands, output formats,
//! exit codes, and byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = Command::new(env!("CARGO_BIN_EXE_fourfold"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        status.code().expect("exit code"),
        String::from_utf8(stdout).expect("utf8 stdout"),
        String::from_utf8(stderr).expect("utf8 stderr"),
    )
}

#[test]
fn eval_text_report() {
    let (code, out, _) = run(&["eval", "A"]);
    assert_eq!(code, 0);
    assert!(out.contains("expression:      A"));
    assert!(out.contains("bordism classes: {8, 8}"));
}

#[test]
fn eval_json_eta_set() {
    let (code, out, _) = run(&["eval", "Q", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"eta_set\": [\n    14,\n    18\n  ]"), "{out}");
    assert!(out.contains("\"canonical\": \"Q\""));
}

#[test]
fn eval_json_without_pin_structure() {
    let (code, out, _) = run(&["eval", "CP2", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"pin_plus\": false"));
    assert!(out.contains("\"structure_count\": 0"));
}

#[test]
fn eval_with_oracle_flag() {
    let (code, out, _) = run(&["eval", "RP4 # KbxS2", "--oracle"]);
    assert_eq!(code, 0);
    assert!(out.contains("oracle:          agrees (brute-force cross-check)"));
}

#[test]
fn compare_exotic_pair() {
    let (code, out, _) = run(&["compare", "twist(S2gR)", "S2gR"]);
    assert_eq!(code, 0);
    assert!(out.contains("homeomorphic:  yes"));
    assert!(out.contains("smooth:        exotic"));
    assert!(out.contains("{1} vs {0}"));
}

#[test]
fn compare_json_fields() {
    let (code, out, _) = run(&[
        "compare",
        "gluck(S3tS1 # S2xS2)",
        "S3tS1 # S2xS2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("\"homeomorphic\": \"yes\""));
    assert!(out.contains("\"smooth\": \"exotic\""));
    assert!(out.contains("\"left_eta_set\": [\n    16\n  ]"));
}

#[test]
fn compare_diffeomorphic_with_cp2() {
    let (code, out, _) = run(&["compare", "twist(RP4) # CP2", "RP4 # CP2"]);
    assert_eq!(code, 0);
    assert!(out.contains("smooth:        diffeomorphic"));
}

#[test]
fn cover_subcommand() {
    let (code, out, _) = run(&["cover", "gluck(KbxS2 # S2xS2)"]);
    assert_eq!(code, 0);
    assert!(out.contains("cover:  T2xS2 # S2xS2 # S2xS2"));
    assert!(out.contains("rules:  C6, C5"));
    assert!(out.contains("chi doubled (4 = 2 x 2)"));
}

#[test]
fn cover_of_orientable_input_fails() {
    let (code, _, err) = run(&["cover", "S4"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
}

#[test]
fn tables_all_targets_pass() {
    for target in [
        "thm0",
        "thmPr",
        "thmM",
        "thmInv",
        "propValues",
        "lemValues",
        "propComp",
    ] {
        let (code, out, _) = run(&["tables", target]);
        assert_eq!(code, 0, "target {target}");
        assert!(out.contains("result: all rows match"), "target {target}");
    }
}

#[test]
fn tables_json_document() {
    let (code, out, _) = run(&["tables", "propComp", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"target\": \"propComp\""));
    assert!(out.contains("\"ok\": true"));
}

#[test]
fn tables_discrepancy_note() {
    let (code, out, _) = run(&["tables", "thmInv"]);
    assert_eq!(code, 0);
    assert!(out.contains("note: sphere count 1 from chi is odd"));
}

#[test]
fn syntax_error_exits_1() {
    let (code, _, err) = run(&["eval", "RP4 @"]);
    assert_eq!(code, 1);
    assert!(err.contains("1:5"), "{err}");
}

#[test]
fn precondition_error_exits_2() {
    let (code, _, err) = run(&["eval", "twist(CP2)"]);
    assert_eq!(code, 2);
    assert!(err.contains("twist requires"));
}

#[test]
fn circle_sum_of_orientable_exits_2() {
    let (code, _, err) = run(&["eval", "S4 #s1 RP4"]);
    assert_eq!(code, 2);
    assert!(err.contains("1:4"), "error points at the operator: {err}");
}

#[test]
fn enumeration_bound_exits_2() {
    let (code, _, err) = run(&["eval", "KbxT2", "--oracle", "--max-enum", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("bound"));
}

#[test]
fn unknown_table_target_exits_1() {
    let (code, _, err) = run(&["tables", "thmX"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown table target"));
}

#[test]
fn missing_arguments_exit_1() {
    let (code, _, _) = run(&["eval"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("eval"));
    assert!(out.contains("tables"));
}

#[test]
fn output_is_byte_stable() {
    let expr = "gluck(Xi3 # S2xS2) # RP4";
    for format in ["text", "json"] {
        let a = run(&["eval", expr, "--format", format]);
        let b = run(&["eval", expr, "--format", format]);
        assert_eq!(a, b, "format {format}");
    }
}
