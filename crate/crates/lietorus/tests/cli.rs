//! End-to-end runs of the command-line binary: flag parsing, exit codes,
//! deterministic reports, the scenario file path, and error surfaces.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lietorus"))
}

fn run_ok(args: &[&str]) -> serde_json::Value {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "args {args:?} failed: {}\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn normalize_matches_worked_value() {
    let v = run_ok(&["normalize", "--modulus", "5,5", "--matrix", "1,0,0,2"]);
    assert_eq!(v["data"]["p"], serde_json::json!(2));
}

#[test]
fn check_untwisted_f4() {
    let v = run_ok(&["check", "--algebra", "F4", "--tuple", "identity"]);
    assert_eq!(v["pass"], serde_json::json!(true));
    let names: Vec<String> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    for expected in ["(A1)", "(A2)", "(A3)", "LT1", "LT2(i)", "LT2(ii)", "LT3", "LT4", "LT5"] {
        assert!(names.iter().any(|n| n == expected), "missing check {expected}");
    }
}

#[test]
fn torus_command_b2_involution_on_a3() {
    let v = run_ok(&["torus", "--algebra", "A3", "--auto", "diagram:2,1,0"]);
    assert_eq!(v["pass"], serde_json::json!(true));
    assert_eq!(v["data"]["type"], serde_json::json!("B2"));
    assert_eq!(v["data"]["central_index"], serde_json::json!(2));
}

#[test]
fn reports_rerun_byte_identical() {
    let a = bin().args(["example", "diagram-a2"]).output().unwrap();
    let b = bin().args(["example", "diagram-a2"]).output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failing_check_exits_one() {
    // duplicated generator breaks the order condition
    let out = bin()
        .args([
            "check",
            "--algebra",
            "A2",
            "--auto",
            "diagram:1,0",
            "--auto",
            "diagram:1,0",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], serde_json::json!(false));
}

#[test]
fn bad_input_exits_two() {
    let out = bin().args(["normalize", "--modulus", "2,4", "--matrix", "1,0,0,1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error"));
}

#[test]
fn field_too_small_exits_three() {
    // an automorphism file over conductor 1 whose matrix has order 2:
    // the character grading needs a second root of unity
    let dir = std::env::temp_dir().join("lietorus-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("flip.json");
    // diag(1, -1, ..., -1)-style flip on the 3-dimensional algebra: swap of
    // the two root vectors with the Cartan negated is an automorphism
    let auto = serde_json::json!({
        "conductor": 1,
        "order": 2,
        "matrix": [
            [["-1/1"], ["0/1"], ["0/1"]],
            [["0/1"], ["0/1"], ["1/1"]],
            [["0/1"], ["1/1"], ["0/1"]]
        ]
    });
    std::fs::write(&path, serde_json::to_string(&auto).unwrap()).unwrap();
    let out = bin()
        .args(["grade", "--algebra", "A1", "--auto", &format!("file:{}", path.display())])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn scenario_file_round_trip() {
    let dir = std::env::temp_dir().join("lietorus-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spec.json");
    std::fs::write(
        &path,
        r#"{"command":"orbits","group":[5,5],"slots":2}"#,
    )
    .unwrap();
    let v = run_ok(&["run", path.to_str().unwrap()]);
    assert_eq!(v["data"]["p_values"], serde_json::json!([1, 2]));
}

#[test]
fn isotope_command_reports_fingerprints() {
    let v = run_ok(&[
        "isotope",
        "--algebra",
        "A1",
        "--auto",
        "identity",
        "--auto",
        "identity",
        "--shift",
        "3,1",
    ]);
    assert_eq!(v["pass"], serde_json::json!(true));
    assert_eq!(v["data"]["fingerprints_equal"], serde_json::json!(true));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("lietorus-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = bin()
        .args(["--output", path.to_str().unwrap(), "orbits", "--group", "2,2,2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["data"]["p_values"], serde_json::json!([1]));
}
