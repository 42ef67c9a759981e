//! End-to-end tests of the `stochopt` binary: exit codes, report
//! determinism, and the output formats of every subcommand.

use std::path::PathBuf;
use std::process::{Command, Output};
use stochopt::io::parse_instance;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stochopt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn gen_random(dir: &std::path::Path, name: &str, extra: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut args = vec![
        "gen",
        "--family",
        "random",
        "--n",
        "4",
        "--m",
        "3",
        "--seed",
        "7",
        "--out",
    ];
    let path_str = path.to_str().unwrap().to_owned();
    args.push(&path_str);
    args.extend_from_slice(extra);
    let output = run(&args);
    assert_eq!(output.status.code(), Some(0), "gen failed: {output:?}");
    path
}

#[test]
fn solve_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_random(dir.path(), "inst.json", &[]);
    let first = run(&["solve", path.to_str().unwrap()]);
    let second = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second), "stdout must be byte-identical");
    let report: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert!(report["digest"].is_string());
    assert!(report["rows"][0]["payoff"].is_string());
    assert!(report["rows"][0].get("wall_ms").is_none(), "no timings in JSON");
}

#[test]
fn missing_file_exits_one() {
    let output = run(&["solve", "/nonexistent/instance.json"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn invalid_instance_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"type\": \"single\"}").unwrap();
    let output = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn compare_runs_clean_against_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_random(dir.path(), "inst.json", &[]);
    let output = run(&["compare", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert!(report["oracle"]["payoff"].is_string());
    assert_eq!(report["violations"].as_array().unwrap().len(), 0);
    assert!(!report["rows"].as_array().unwrap().is_empty());
}

#[test]
fn gen_families_emit_parseable_instances() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["gen", "--family", "graph", "--vertices", "4", "--edges", "0-1,1-2", "--base", "5"],
        vec!["gen", "--family", "sat", "--vars", "4", "--seed", "3"],
        vec!["gen", "--family", "sdpgap", "--m", "3", "--base", "7"],
        vec!["gen", "--family", "random", "--n", "3", "--m", "2", "--s", "2", "--seed", "1"],
    ];
    for args in cases {
        let output = run(&args);
        assert_eq!(output.status.code(), Some(0), "{args:?}: {output:?}");
        parse_instance(&stdout(&output)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn dual_reports_budget_and_probes() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_random(dir.path(), "inst.json", &[]);
    let output = run(&["dual", path.to_str().unwrap(), "--target", "1/10"]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    for key in ["budget", "payoff", "probes", "rho", "target"] {
        assert!(!value[key].is_null(), "missing key {key}");
    }
    assert_eq!(value["rho"], "1");
    let approx = run(&["dual", path.to_str().unwrap(), "--target", "1/10", "--probe", "approx"]);
    assert_eq!(approx.status.code(), Some(0), "{approx:?}");
    let value: serde_json::Value = serde_json::from_str(&stdout(&approx)).unwrap();
    assert_eq!(value["rho"], "6"); // 2m with m = 3
}

#[test]
fn bench_emits_csv_per_file() {
    let dir = tempfile::tempdir().unwrap();
    gen_random(dir.path(), "a.json", &[]);
    gen_random(dir.path(), "b.json", &["--kappa", "2"]);
    let output = run(&["bench", dir.path().to_str().unwrap(), "--repeat", "1"]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "file,algorithm,payoff,median_ms");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("a.json,"));
    assert!(lines[2].starts_with("b.json,"));
}
