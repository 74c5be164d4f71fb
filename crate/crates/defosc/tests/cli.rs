//! End-to-end CLI behaviour: exit codes, output determinism, and a few
//! frozen values.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defosc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn spectrum_default_params() {
    let out = run(&["spectrum", "--levels", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "level,energy,energy_closed_form");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    let e0: f64 = first[1].parse().unwrap();
    assert!((e0 - 109.0 / 28.0).abs() < 1e-12);
}

#[test]
fn spectrum_zero_levels_is_empty() {
    let out = run(&["spectrum", "--levels", "0", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "[]");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify", "--suite", "algebra", "--dim", "24", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical JSON across runs");
    assert!(stdout(&a).starts_with("{\""));
}

#[test]
fn verify_all_suites_exit_zero() {
    let out = run(&["verify", "--suite", "all", "--dim", "32"]);
    assert!(out.status.success());
    // Regime B exercises the remaining closed-form branches.
    let out = run(&[
        "verify", "--suite", "all", "--dim", "32", "--p", "1.25", "--q", "1.1111111111111112",
        "--phi1", "0.5", "--phi2", "1.0",
    ]);
    assert!(out.status.success());
}

#[test]
fn degenerate_parameters_exit_two() {
    let out = run(&["spectrum", "--p", "1.0", "--q", "1.0", "--phi1", "1.0", "--phi2", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_lowercase();
    assert!(err.contains("degenerate"), "stderr: {err}");
}

#[test]
fn unknown_flag_exits_two() {
    let out = run(&["spectrum", "--does-not-exist"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn series_pochhammer_value() {
    // (0.5; 0.5)_2 = (1 - 0.5)(1 - 0.25) = 0.375.
    let out = run(&["series", "poch", "--a", "0.5", "--base", "0.5", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: f64 = text.lines().nth(1).unwrap().parse().unwrap();
    assert!((value - 0.375).abs() < 1e-15);
}

#[test]
fn correlator_number_element() {
    let out = run(&[
        "correlator", "--m", "1", "--n", "1", "--r", "1", "--s", "1", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let closed: f64 = row[4].parse().unwrap();
    let residual: f64 = row[6].parse().unwrap();
    assert!((closed - 16.0 / 7.0).abs() < 1e-12);
    assert!(residual < 1e-12);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join("defosc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("params.json");
    std::fs::write(
        &path,
        r#"{"p": 0.9, "q": 0.8, "alpha": 1.0, "nu": 1.0, "phi1": 1.0, "phi2": 0.9}"#,
    )
    .unwrap();
    let base = run(&["series", "--config", path.to_str().unwrap(), "number", "--x", "1.0"]);
    assert!(base.status.success());
    let overridden = run(&[
        "series", "--config", path.to_str().unwrap(), "--phi2", "0.5", "number", "--x", "1.0",
    ]);
    assert!(overridden.status.success());
    let v1: f64 = stdout(&base).lines().nth(1).unwrap().parse().unwrap();
    let v2: f64 = stdout(&overridden).lines().nth(1).unwrap().parse().unwrap();
    // [1] = (phi1 p^{-1} - phi2 q) / (p^{-1} - q).
    assert!((v1 - (1.0 / 0.9 - 0.9 * 0.8) / (1.0 / 0.9 - 0.8)).abs() < 1e-12);
    assert!((v2 - 16.0 / 7.0).abs() < 1e-12);
}

#[test]
fn casimir_spectrum_forms_agree() {
    let out = run(&[
        "casimir-spectrum", "--beta", "0.4", "--gamma", "0.3", "--levels", "5", "--format", "csv",
    ]);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        let row: Vec<&str> = line.split(',').collect();
        let a: f64 = row[1].parse().unwrap();
        let b: f64 = row[2].parse().unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
    }
}
