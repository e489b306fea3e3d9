//! End-to-end checks of the command-line surface: exit codes, byte
//! determinism of JSON reports across worker counts, and the documented
//! outputs of the small subcommands.

use std::process::{Command, Output};

fn coevents(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coevents"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn run_json_is_byte_identical_across_worker_counts() {
    let one = coevents(&[
        "run",
        "double_three_slit",
        "--report",
        "json",
        "--workers",
        "1",
    ]);
    assert!(one.status.success());
    for workers in ["2", "4", "7"] {
        let other = coevents(&[
            "run",
            "double_three_slit",
            "--report",
            "json",
            "--workers",
            workers,
        ]);
        assert!(other.status.success());
        assert_eq!(one.stdout, other.stdout, "workers={workers}");
    }
}

#[test]
fn run_json_report_shape() {
    let output = coevents(&["run", "three_slit", "--report", "json", "--oracle"]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["mu_omega"], "1");
    assert_eq!(report["precluded_count"], 3);
    assert_eq!(
        report["primitives"][0]["support"],
        serde_json::json!(["A", "C"])
    );
    assert_eq!(report["oracle"], "agrees");
    assert!(
        report.get("elapsed").is_none(),
        "timing stays out of the JSON body"
    );
}

#[test]
fn mu_prints_exact_zero() {
    let output = coevents(&["mu", "three_slit", "--event", "A,B"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), "0\n");

    let output = coevents(&["mu", "three_slit", "--event", "A,C"]);
    assert_eq!(stdout_of(&output), "4\n");
}

#[test]
fn deduce_blocks_at_step_three_multiplicatively() {
    let output = coevents(&["deduce", "appendix_3slit", "--profile", "multiplicative"]);
    assert_eq!(
        output.status.code(),
        Some(0),
        "a blocked proof is a result, not an error"
    );
    let text = stdout_of(&output);
    assert!(text.contains("blocked at step 3"), "{text}");
    assert!(text.contains("negation"), "{text}");

    let output = coevents(&["deduce", "appendix_3slit", "--profile", "classical"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout_of(&output).contains("verdict: proven"));
}

#[test]
fn deduce_with_scenario_crosschecks() {
    let output = coevents(&[
        "deduce",
        "appendix_3slit",
        "--profile",
        "classical",
        "--scenario",
        "three_slit",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(
        text.contains("goal: phi(A+B+C) = 0 holds for 0 of 1"),
        "{text}"
    );
}

#[test]
fn scenario_list_names_builtins() {
    let output = coevents(&["scenario", "list"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    for name in [
        "three_slit",
        "classical_die",
        "classical_with_null_history",
        "double_three_slit",
        "two_site_hopper",
        "appendix_3slit",
    ] {
        assert!(text.contains(name), "missing {name} in:\n{text}");
    }
}

#[test]
fn input_errors_exit_two() {
    let output = coevents(&["run", "no_such_scenario_anywhere.json"]);
    assert_eq!(output.status.code(), Some(2));

    let output = coevents(&["frobnicate"]);
    assert_eq!(output.status.code(), Some(2));

    let output = coevents(&["mu", "three_slit", "--event", "A,Q"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let output = coevents(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn expectation_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wrong.json");
    std::fs::write(
        &path,
        r#"{
            "name": "wrong",
            "space": ["A", "B", "C"],
            "measure": {"kind": "amplitude", "amplitudes": ["1", "-1", "1"]},
            "expected": {"primitive_count": 5}
        }"#,
    )
    .unwrap();
    let output = coevents(&["run", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout_of(&output).contains("EXPECTATION MISMATCHES"));
}

#[test]
fn scenario_files_load_from_paths() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    std::fs::write(
        &path,
        r#"{
            "name": "pair",
            "space": ["up", "down"],
            "measure": {"kind": "amplitude", "amplitudes": [["0", "1"], ["0", "-1"]]},
            "expected": {"precluded_count": 2}
        }"#,
    )
    .unwrap();
    let output = coevents(&["preclusions", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("2 precluded events"), "{text}");
    assert!(text.contains("up+down"), "{text}");
}

#[test]
fn full_mu_table_flag_writes_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("mu.jsonl");
    let output = coevents(&[
        "run",
        "two_site_hopper",
        "--full-mu-table",
        table.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = std::fs::read_to_string(&table).unwrap();
    assert_eq!(text.lines().count(), 256, "2^8 rows for the hopper");
}
