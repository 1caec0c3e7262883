//! Black-box tests of the binary: round trips, engine cross-checks,
//! determinism, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_udsphere"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("udsphere-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn construct_count_round_trip() {
    let cfg = tmp("quadratic.json");
    let out = run(&[
        "construct",
        "--kind",
        "quadratic-c4",
        "--n",
        "10",
        "--out",
        cfg.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&[
        "count",
        "--input",
        cfg.to_str().unwrap(),
        "--k",
        "4",
        "--what",
        "cycles",
        "--engine",
        "both",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["engines_agree"], serde_json::json!(true));
    assert_eq!(v["reports"][0]["cycles_dihedral"], "28");
    assert_eq!(v["reports"][1]["cycles_dihedral"], "28");
    std::fs::remove_file(cfg).ok();
}

#[test]
fn construct_is_deterministic() {
    let a = run(&["construct", "--kind", "sphere-path", "--k", "5", "--n", "50"]);
    let b = run(&["construct", "--kind", "sphere-path", "--k", "5", "--n", "50"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pattern_count_matches_the_closed_form() {
    let cfg = tmp("path5.json");
    run(&[
        "construct",
        "--kind",
        "sphere-path",
        "--k",
        "5",
        "--n",
        "50",
        "--out",
        cfg.to_str().unwrap(),
    ]);
    let out = run(&[
        "count",
        "--input",
        cfg.to_str().unwrap(),
        "--k",
        "5",
        "--what",
        "pattern",
    ]);
    let v = stdout_json(&out);
    // m = 25 per circle, so 23 free points and 23³ designated paths.
    assert_eq!(v["pattern_count"], "12167");
    std::fs::remove_file(cfg).ok();
}

#[test]
fn counts_work_on_edge_lists() {
    let path = tmp("triangle.edges");
    std::fs::write(&path, "0 1\n1 2\n2 0\n").unwrap();
    let out = run(&[
        "count",
        "--input",
        path.to_str().unwrap(),
        "--k",
        "3",
        "--what",
        "cycles",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["unordered_paths"], "3");
    assert_eq!(v["cycles_dihedral"], "1");
    std::fs::remove_file(path).ok();
}

#[test]
fn lp_verify_builtin_k4() {
    let out = run(&["lp-verify", "--builtin", "k4"]);
    let v = stdout_json(&out);
    assert_eq!(v["max_xi"], "2");
    assert_eq!(v["verified"], serde_json::json!(true));
    assert_eq!(v["argmax"]["lambda"], serde_json::json!([3, 3, 3, 3]));
}

#[test]
fn lp_verify_rejects_non_cubic_input() {
    let path = tmp("square.edges");
    std::fs::write(&path, "0 1\n1 2\n2 3\n3 0\n").unwrap();
    let out = run(&["lp-verify", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(path).ok();
}

#[test]
fn fit_emits_csv_and_json() {
    let csv = tmp("fit.csv");
    let json = tmp("fit.json");
    let out = run(&[
        "fit",
        "--kind",
        "quadratic-c4",
        "--grid",
        "50,100,200,400",
        "--what",
        "cycles",
        "--csv",
        csv.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("construction,k,mode,x_label,x,count"));
    assert!(csv_text.contains("quadratic-c4,4,cycles,points,50,1128"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let slope = v["slope"].as_f64().unwrap();
    assert!((slope - 2.0).abs() < 0.05);
    assert_eq!(v["predicted_exponent"], "2");
    std::fs::remove_file(csv).ok();
    std::fs::remove_file(json).ok();
}

#[test]
fn budget_refusal_uses_its_own_exit_code() {
    let out = run(&[
        "fit",
        "--kind",
        "sphere-path",
        "--k",
        "10",
        "--grid",
        "60,90,135,203",
        "--what",
        "pattern",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // The same refusal guards single counting runs via the stored pattern.
    let cfg = tmp("big-path.json");
    run(&[
        "construct",
        "--kind",
        "sphere-path",
        "--k",
        "10",
        "--n",
        "240",
        "--out",
        cfg.to_str().unwrap(),
    ]);
    let out = run(&[
        "count",
        "--input",
        cfg.to_str().unwrap(),
        "--k",
        "10",
        "--what",
        "paths",
        "--budget",
        "1000000",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("estimate"), "refusal names the estimate: {err}");
    std::fs::remove_file(cfg).ok();
}

#[test]
fn usage_errors_exit_one() {
    let out = run(&["construct", "--kind", "no-such-thing", "--n", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["count", "--input", "/definitely/not/here", "--k", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = bin().arg("nonsense-subcommand").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bounds_prints_the_gap_rows() {
    let out = run(&["bounds"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("sphere-cycle"));
    assert!(text.contains("7/3"));
    assert!(text.contains("20/9"));
    assert!(text.contains("12/5"));
}
