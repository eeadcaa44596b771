//! End-to-end tests driving the `permkit` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn permkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn temp_file(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("permkit-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn dist_examples() {
    let out = permkit(&["dist", "--metric", "cyclic", "1 2 3 4", "4 3 2 1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2");

    let out = permkit(&["dist", "--metric", "kendall", "1,2,3,4", "4,3,2,1"]);
    assert_eq!(stdout(&out).trim(), "6");

    // 0-based inputs normalize
    let out = permkit(&["dist", "--zero-based", "0 1 2", "2 1 0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn mahonian_row_text() {
    let out = permkit(&["mahonian", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 3 5 6 5 3 1");
}

#[test]
fn ball_size_line() {
    let out = permkit(&["ball", "--metric", "cyclic", "--radius", "1", "1 2 3 4 5"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("ball of radius 1"));
    assert!(stdout(&out).contains("6 members"));
}

#[test]
fn construct_then_verify_roundtrip() {
    let path = temp_file("s5.code");
    let out = permkit(&["construct", "s5-perfect"]);
    assert!(out.status.success());
    std::fs::write(&path, stdout(&out)).unwrap();

    let out = permkit(&[
        "verify-code",
        path.to_str().unwrap(),
        "--min-dist",
        "3",
        "--perfect",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("claimed minimum distance 3: confirmed"));
    assert!(text.contains("perfect 1-error-correcting: yes (20 x 6 = 120)"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_code_refutes_bad_claim() {
    let path = temp_file("bad-claim.code");
    std::fs::write(&path, "n=3 metric=kendall\n1 2 3\n3 2 1\n").unwrap();
    let out = permkit(&["verify-code", path.to_str().unwrap(), "--min-dist", "2"]);
    // a refuted claim is still a verdict, not an error
    assert!(out.status.success());
    assert!(stdout(&out).contains("REFUTED"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_code_reports_coverage_defects() {
    let path = temp_file("imperfect.code");
    // two words at Kendall distance 1 cannot be a perfect 1-code
    std::fs::write(&path, "n=3 metric=kendall\n1 2 3\n2 1 3\n").unwrap();
    let out = permkit(&["verify-code", path.to_str().unwrap(), "--perfect", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("perfect 1-error-correcting: no"));
    assert!(text.contains("defects"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_code_regularity_counts() {
    let path = temp_file("regular.code");
    let constructed = permkit(&["construct", "s5-perfect"]);
    std::fs::write(&path, stdout(&constructed)).unwrap();
    let out = permkit(&["verify-code", path.to_str().unwrap(), "--regularity", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("regularity at r = 1: uniform (expected 4"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn nonexist_recheck_roundtrip() {
    let path = temp_file("cert5.json");
    let out = permkit(&["nonexist", "5", "--json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"verdict\": \"nonexistence\""));
    assert!(text.contains("24/5"));
    std::fs::write(&path, &text).unwrap();

    let out = permkit(&["recheck", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("confirmed"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn escalated_nonexist_for_n6() {
    let out = permkit(&["nonexist", "6", "--pattern-r", "2", "--escalate-exact-cover"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Inconclusive"));
    assert!(text.contains("escalation:"));
    assert!(text.contains("Nonexistence"));
}

#[test]
fn json_reports_are_deterministic_modulo_runtime() {
    let normalize = |text: &str| -> serde_json::Value {
        let mut value: serde_json::Value = serde_json::from_str(text).unwrap();
        value["meta"]["runtime_ms"] = 0.into();
        if value.get("certificate").is_some() {
            value["certificate"]["stats"]["elapsed_ms"] = 0.into();
        }
        value
    };
    for args in [
        vec!["mahonian", "6", "--json"],
        vec!["nonexist", "5", "--json", "--seed", "42"],
        vec!["nonexist", "6", "--pattern-r", "2", "--json", "--seed", "7"],
        vec!["bound", "5", "4", "--json"],
    ] {
        let first = permkit(&args);
        let second = permkit(&args);
        assert!(first.status.success());
        assert_eq!(
            serde_json::to_string(&normalize(&stdout(&first))).unwrap(),
            serde_json::to_string(&normalize(&stdout(&second))).unwrap(),
            "args: {args:?}"
        );
    }
}

#[test]
fn bound_reports_fifteen() {
    let out = permkit(&["bound", "5", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("|C| <= 15"));
}

#[test]
fn probe_reports_counts() {
    let out = permkit(&["probe", "distance-regularity", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("midpoint counts 1 vs 2"));
    assert!(text.contains("NOT distance regular"));
}

#[test]
fn classes_reports_counts() {
    let out = permkit(&["classes", "4", "--graph-stats"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("6 rotation classes of size 4"));
    assert!(text.contains("class graph:"));
}

#[test]
fn error_paths_have_distinct_messages() {
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["dist", "1 2 3", "1 2"], "size mismatch"),
        (vec!["dist", "1 2 2", "1 2 3"], "repeated"),
        (vec!["mahonian", "25"], "n must be in"),
        (vec!["verify-code", "/definitely/not/here.code"], "cannot read code file"),
        (vec!["construct", "cyclic-prime", "6"], "prime"),
        (vec!["nonexist", "3"], "n >= 4"),
    ];
    for (args, needle) in cases {
        let out = permkit(&args);
        assert!(!out.status.success(), "args: {args:?}");
        let text = stderr(&out);
        assert!(text.contains(needle), "args {args:?} produced: {text}");
    }
    // unknown subcommand via clap
    let out = permkit(&["frobnicate"]);
    assert!(!out.status.success());
}

#[test]
fn search_perfect_emits_witness_for_s3() {
    let out = permkit(&["search", "perfect", "3", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ExistenceWitness"));
    assert!(text.contains("witness (2 words):"));
}
