use std::path::PathBuf;
use std::process::{Command, Output};

use harmsphere::io::parse_curve;
use serde_json::Value;

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmsphere"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn reals(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|c| {
            assert_eq!(c["im"], "0/1");
            c["re"].as_str().unwrap().to_string()
        })
        .collect()
}

#[test]
fn analyze_reports_invariants_and_divisor() {
    let out = run(&["analyze", "--input", &data("coalesce_t1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["invariants"]["d"], 0);
    assert_eq!(v["invariants"]["E"], 8);
    assert_eq!(reals(&v["ramification"]["divisor"]), ["-1/1", "0/1", "1/1"]);
    assert_eq!(v["polar"]["k"], 4);
}

#[test]
fn veronese_file_has_degree_two() {
    let v = json(&run(&["analyze", "--input", &data("veronese.json")]));
    assert_eq!(v["invariants"]["k"], 2);
    assert_eq!(v["ramification"]["r_total"], 0);
}

#[test]
fn kernel_example_has_dimension_four() {
    let out = run(&["kernel", "--input", &data("kernel_example.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim_kernel"], 4);
    assert_eq!(v["rank"], 3);
    assert!(v["expected_dim"].is_null());
    assert_eq!(v["matrix"].as_array().unwrap().len(), 4);
}

#[test]
fn bad_input_exits_with_two() {
    let out = run(&["analyze", "--input", &data("not_coprime.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not coprime"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(data("veronese.json"))
        .unwrap()
        .replacen("\"1/1\"", "\"3/0\"", 1);
    std::fs::write(&bad, text).unwrap();
    let out = run(&["analyze", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed input"));

    assert_eq!(
        run(&["analyze", "--input", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["selftest", "--tol", "nope=1"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "geometry",
            "--quad-order",
            "2",
            "--input",
            &data("veronese.json")
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn failed_check_exits_with_one() {
    let out = run(&[
        "geometry",
        "--tol",
        "geometry=1e-300",
        "--input",
        &data("veronese.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["checks"]["energy"], false);
}

#[test]
fn geometry_of_the_coalescing_curve() {
    let out = run(&["geometry", "--input", &data("coalesce_t1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["report"]["E_num"].as_f64().unwrap() - 8.0).abs() < 1e-3);
    assert_eq!(v["report"]["quadrature"]["order"], 64);
    let holo = json(&run(&[
        "geometry",
        "--holomorphic",
        "--input",
        &data("veronese.json"),
    ]));
    assert!((holo["report"]["d_num"].as_f64().unwrap() - 2.0).abs() < 1e-3);
}

#[test]
fn polar_twice_returns_the_curve() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.json");
    let out = run(&[
        "polar",
        "--input",
        &data("coalesce_t1.json"),
        "--output",
        once.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let twice = run(&["polar", "--input", once.to_str().unwrap()]);
    let back = parse_curve(std::str::from_utf8(&twice.stdout).unwrap()).unwrap();
    let orig = parse_curve(&std::fs::read_to_string(data("coalesce_t1.json")).unwrap()).unwrap();
    assert!(back.projectively_equal(&orig));
}

#[test]
fn gauss_sample_writes_a_grid() {
    let out = run(&[
        "gauss-sample",
        "--input",
        &data("burstall_t0.json"),
        "--grid",
        "5",
        "--chart",
        "w",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 26);
    assert!(lines[1..]
        .iter()
        .all(|l| l.split(',').count() == 9 && l.ends_with(",w")));
}

#[test]
fn family_reports_the_burstall_jump() {
    let out = run(&[
        "family", "--preset", "burstall", "--t-min", "-1/5", "--t-max", "1/5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["gauss"]["t"].as_array().unwrap().len(), 41);
    assert_eq!(v["gauss"]["jumps"].as_array().unwrap().len(), 1);
    assert_eq!(v["divisor"]["stratum_changes"][0]["t"], "0/1");
    let csv = run(&[
        "family",
        "--preset",
        "cmr",
        "--params",
        "4,1",
        "--format",
        "gauss-csv",
        "--samples",
        "3",
    ]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 4);
    assert_eq!(
        run(&["family", "--preset", "cmr", "--params", "3,2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn selftest_passes_and_is_reproducible() {
    let a = run(&["selftest", "--seed", "7"]);
    let b = run(&["selftest", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["seed"], 7);
}
