//! Integration tests for the command-line interface: exit codes, output
//! formats, determinism, and the bundled-data subcommands.

use assert_cmd::Command;
use predicates::prelude::*;
use std::path::PathBuf;

fn helpx() -> Command {
    Command::cargo_bin("helpx").expect("binary builds")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../helpx/fixtures").join(name)
}

#[test]
fn solve_nontrivial_survivors_exit_10() {
    helpx()
        .args(["solve", "--group", "S4", "--order", "4", "--conductor", "4", "--wagner"])
        .assert()
        .code(10)
        .stdout(predicate::str::contains("4 nontrivial survivors"))
        .stdout(predicate::str::contains("survivors (5):"));
}

#[test]
fn solve_rational_coefficients_trivial_exit_0() {
    helpx()
        .args(["solve", "--group", "S4", "--order", "4", "--conductor", "1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("trivial"));
}

#[test]
fn solve_no_solutions_exit_0() {
    helpx()
        .args(["solve", "--group", "S4", "--order", "5", "--conductor", "5"])
        .assert()
        .success()
        .stdout(predicate::str::contains("no solutions"));
}

#[test]
fn solve_unknown_group_exit_2() {
    helpx().args(["solve", "--group", "NOPE", "--order", "4"]).assert().code(2);
}

#[test]
fn solve_missing_table_file_exit_2() {
    helpx()
        .args(["solve", "--table", "/nonexistent/table.json", "--order", "4"])
        .assert()
        .code(2);
}

#[test]
fn solve_json_is_deterministic_and_consistent_with_text() {
    let run = || {
        helpx()
            .args(["solve", "--group", "S4", "--order", "4", "--format", "json"])
            .assert()
            .code(10)
            .get_output()
            .stdout
            .clone()
    };
    let a = run();
    let b = run();
    assert_eq!(a, b, "identical configs must produce byte-identical JSON");

    let report: serde_json::Value = serde_json::from_slice(&a).expect("valid JSON");
    assert_eq!(report["group_id"], "S4");
    assert_eq!(report["classification"], serde_json::json!({ "NontrivialSurvivors": 4 }));
    let survivors = report["survivors"].as_array().expect("survivor array");
    assert_eq!(survivors.len(), 5);

    let text = helpx()
        .args(["solve", "--group", "S4", "--order", "4"])
        .assert()
        .code(10)
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(text).unwrap();
    assert!(text.contains("survivors (5):"));
    assert_eq!(text.matches("u^1:").count(), 5, "one rendered case per JSON survivor");
}

#[test]
fn solve_out_writes_file() {
    let dir = std::env::temp_dir().join("helpx-cli-test-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    helpx()
        .args(["solve", "--group", "S4", "--order", "4", "--format", "json"])
        .args(["--out", path.to_str().unwrap()])
        .assert()
        .code(10);
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&path).unwrap()).expect("valid JSON file");
    assert_eq!(report["order"], 4);
}

#[test]
fn solve_brauer_flag_matches_known_count() {
    helpx()
        .args(["solve", "--group", "S5", "--order", "12", "--no-wagner", "--brauer", "5"])
        .assert()
        .code(10)
        .stdout(predicate::str::contains("8 nontrivial survivors"));
}

#[test]
fn solve_quotient_filter_reduces_survivors() {
    let fusion = fixture("fusion_A4C4_S4.json");
    helpx()
        .args(["solve", "--group", "A4:C4", "--order", "4"])
        .assert()
        .code(10)
        .stdout(predicate::str::contains("14 nontrivial survivors"));
    helpx()
        .args(["solve", "--group", "A4:C4", "--order", "4"])
        .args(["--quotient", fusion.to_str().unwrap()])
        .assert()
        .code(10)
        .stdout(predicate::str::contains("10 nontrivial survivors"));
}

#[test]
fn verify_unit_order4() {
    helpx()
        .arg("verify-unit")
        .arg(fixture("unit_S4_order4.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("order: 4"))
        .stdout(predicate::str::contains("augmentation: 1"))
        .stdout(predicate::str::contains(
            "partial augmentations of u^1: [2a=z4^1, 2b=1, 4a=-1*z4^1]",
        ))
        .stdout(predicate::str::contains("matches surviving case"));
}

#[test]
fn verify_unit_order3() {
    helpx()
        .arg("verify-unit")
        .arg(fixture("unit_S3_order3.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("order: 3"))
        .stdout(predicate::str::contains("partial augmentations of u^1: [3a=1]"));
}

#[test]
fn verify_unit_identity() {
    helpx()
        .arg("verify-unit")
        .arg(fixture("unit_S4_identity.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("order: 1"));
}

#[test]
fn verify_unit_parse_failure_exit_2() {
    let dir = std::env::temp_dir().join("helpx-cli-test-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, b"{ not json").unwrap();
    helpx().arg("verify-unit").arg(&path).assert().code(2);
}

#[test]
fn verify_unit_not_normalized_exit_11() {
    let dir = std::env::temp_dir().join("helpx-cli-test-unnorm");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("double.json");
    // the identity element with coefficient 2: augmentation 2, not a
    // normalized unit
    std::fs::write(
        &path,
        serde_json::json!({
            "group_id": "S4",
            "ring": { "conductor": 1, "denominator_primes": [] },
            "terms": [
                { "perm": [0, 1, 2, 3], "coeff": { "conductor": 1, "coords": [2] } }
            ]
        })
        .to_string(),
    )
    .unwrap();
    helpx().arg("verify-unit").arg(&path).assert().code(11);
}

#[test]
fn table1_matches_embedded_expected_values() {
    helpx()
        .arg("table1")
        .assert()
        .success()
        .stdout(predicate::str::contains("verified"))
        .stdout(predicate::str::contains("unreproduced"))
        .stdout(predicate::str::contains("all trivial"));
}
