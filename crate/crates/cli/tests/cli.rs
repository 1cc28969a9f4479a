use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn polarity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarity"))
        .args(args)
        .env_remove("POLARITY_SEED")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn strings(v: &Value) -> Vec<Vec<String>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
        .collect()
}

#[test]
fn verify_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = polarity(&["verify", "--seed", "42", "--trials", "3", "--max-degree", "3", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let r: Value = serde_json::from_slice(&first).unwrap();
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.len() >= 25);
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(checks.iter().all(|c| !c["anchor"].as_str().unwrap().is_empty()));
}

#[test]
fn verify_seed_comes_from_environment() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_polarity"));
        cmd.args(["verify", "--trials", "1", "--max-degree", "1"]);
        match env {
            Some(s) => cmd.env("POLARITY_SEED", s),
            None => cmd.env_remove("POLARITY_SEED"),
        };
        report(&cmd.output().unwrap())["parameters"]["seed"].as_u64().unwrap()
    };
    assert_eq!(run(Some("9")), 9);
    assert_eq!(run(None), 42);
}

#[test]
fn verify_rejects_zero_trials() {
    assert_eq!(polarity(&["verify", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn analyze_basis_a() {
    let out = polarity(&["analyze", data("basis_a.json").to_str().unwrap(), "--x0", "0,0,0", "--lc", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let p = &r["data"]["polarity"];
    assert_eq!(
        strings(&p["couple_stress"]),
        vec![vec!["1/6", "0", "0"], vec!["0", "-1/12", "0"], vec!["0", "0", "-1/12"]]
    );
    for key in ["linear_residual", "angular_residual"] {
        assert!(p[key].as_array().unwrap().iter().all(|x| x == "0"), "{key}");
    }
    assert_eq!(r["truncation_error"], "0");
}

#[test]
fn analyze_constant_nonsymmetric() {
    let out = polarity(&["analyze", data("constant_nonsymmetric.json").to_str().unwrap(), "--x0", "1,2,3", "--lc", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let p = &report(&out)["data"]["polarity"];
    assert_eq!(p["pieces"][0]["verdict"]["class"], "Semipolar");
    assert_eq!(p["angular_residual"], serde_json::json!(["-3", "0", "-2"]));
}

#[test]
fn analyze_cubic_reports_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let out = polarity(&["analyze", data("cubic.json").to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_ne!(r["truncation_error"], "0");
}

#[test]
fn analyze_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let no_sigma = dir.path().join("tau.json");
    std::fs::write(&no_sigma, r#"{"tau": {"rank": "scalar", "components": []}}"#).unwrap();
    let out = polarity(&["analyze", no_sigma.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sigma"));

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"sigma": {"rank": "tensor", "components": [[[{"coeff": "1/0", "exps": [0,0,0]}],[],[]],[[],[],[]],[[],[],[]]]}}"#,
    )
    .unwrap();
    let out = polarity(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero denominator"));

    assert_eq!(polarity(&["analyze", "/nonexistent/field.json"]).status.code(), Some(2));
    assert_eq!(polarity(&["analyze", data("basis_a.json").to_str().unwrap(), "--lc", "0"]).status.code(), Some(2));
}

#[test]
fn torsion_matching_condition() {
    let args = ["scenario", "torsion", "--alpha-bar", "1/100", "--mu", "1", "--lc", "1", "--alpha1", "1/12", "--dx", "1"];
    let out = polarity(&args);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["data"]["torsion"]["matching_condition"], true);
    assert_eq!(r["data"]["torsion"]["paths_agree"], true);

    let out = polarity(&["scenario", "torsion", "--alpha1", "1/6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["data"]["torsion"]["paths_agree"], false);
}

#[test]
fn trace_free_scenario() {
    let out = polarity(&["scenario", "trace-free", "--a", "1", "--b", "0", "--c", "0", "--lc", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let f = &report(&out)["data"]["family"];
    assert_eq!(f["m_integral"], f["m_closed"]);
}

#[test]
fn conformal_scenarios() {
    let out = polarity(&["scenario", "conformal", "--w", "0,0,1", "--model", "modified"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["id"] == "conformal.m-zero"));
    assert_eq!(r["data"]["energies"]["w_curv"], serde_json::json!([]));

    let out = polarity(&["scenario", "conformal", "--model", "skew", "--alpha2", "1/3"]);
    assert_eq!(out.status.code(), Some(0));

    let out = polarity(&["scenario", "conformal", "--model", "modified", "--alpha2", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn yang_scenarios() {
    let out = polarity(&["scenario", "yang-cantilever"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["data"]["third_balance"], serde_json::json!(["0", "0", "1"]));
    let out = polarity(&["scenario", "yang-surface", "--x0", "1,-2,1/2", "--lc", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_scenario_is_usage_error() {
    assert_eq!(polarity(&["scenario", "bending"]).status.code(), Some(2));
    assert_eq!(polarity(&["scenario", "torsion", "--dx", "1/0"]).status.code(), Some(2));
}
