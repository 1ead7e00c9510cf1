use num_traits::Signed;
use std::process::{Command, Output};

use qball::scalars::text::{parse_qufun, parse_rational};
use qball::scalars::QUFun;
use serde_json::Value;

fn qball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qball")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn first_coeff(doc: &Value, degree: usize) -> String {
    doc["series"]["terms"][degree]["entries"][0]["coeff"].as_str().unwrap().to_string()
}

#[test]
fn expand_disc_series() {
    let doc = json(&qball(&["expand", "--m", "1", "--n", "1", "--degree", "4", "--lambda", "formal"]));
    assert_eq!(first_coeff(&doc, 1), "(1-l)/(1-q^2)");
    assert_eq!(doc["series"]["D"], 4);
    assert_eq!(doc["config"]["lambda"], "formal");
    assert_eq!(doc["series"]["terms"].as_array().unwrap().len(), 5);
}

#[test]
fn expand_ordinary_disc() {
    let doc = json(&qball(&["expand", "--m", "1", "--n", "1", "--degree", "2", "--ordinary"]));
    let c = first_coeff(&doc, 1);
    assert_eq!(c, "1+q^2");
    let expected = parse_qufun("(1-q^4)/(1-q^2)").unwrap();
    assert_eq!(parse_qufun(&c).unwrap(), expected);
}

#[test]
fn expand_at_fixed_lambda() {
    let doc = json(&qball(&["expand", "--m", "1", "--n", "1", "--degree", "1", "--lambda", "2"]));
    // (1 - q^4)/(1 - q^2)
    assert_eq!(first_coeff(&doc, 1), "1+q^2");
    assert_eq!(doc["series"]["lambda"], "2");
}

#[test]
fn expand_rejects_bad_input() {
    assert_eq!(qball(&["expand", "--m", "2", "--n", "1"]).status.code(), Some(1));
    assert_eq!(qball(&["expand", "--q", "1/2"]).status.code(), Some(1));
    assert_eq!(qball(&["expand", "--lambda", "1/3"]).status.code(), Some(1));
    assert_eq!(qball(&["expand", "--ordinary", "--lambda", "3"]).status.code(), Some(1));
    assert_eq!(qball(&["expand", "--bogus"]).status.code(), Some(1));
}

#[test]
fn expand_output_is_deterministic() {
    let args = ["expand", "--m", "2", "--n", "2", "--degree", "2"];
    let a = qball(&args);
    let b = qball(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    let back = qball::kernels::parse_series(&doc["series"].to_string()).unwrap();
    assert_eq!(back.degree(), 2);
}

#[test]
fn gram_disc_entries() {
    let doc = json(&qball(&["gram", "--m", "1", "--n", "1", "--q", "1/2", "--lambda", "3", "--degree", "1"]));
    let blocks = doc["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    let g0 = parse_rational(blocks[0]["matrix"][0][0].as_str().unwrap()).unwrap();
    let g1 = parse_rational(blocks[1]["matrix"][0][0].as_str().unwrap()).unwrap();
    let tol = parse_rational("1/1000000000").unwrap();
    assert!((g0 - parse_rational("1").unwrap()).abs() < tol);
    assert!((g1 - parse_rational("16/21").unwrap()).abs() < tol);
    assert_eq!(blocks[1]["basis"], serde_json::json!([[[1, 1, 1]]]));
    assert_eq!(blocks[1]["q"], "1/2");
    assert!(blocks[1]["delta"].as_f64().unwrap() <= 2e-12);
}

#[test]
fn gram_validation() {
    assert_eq!(qball(&["gram", "--lambda", "1", "--m", "1", "--n", "1", "--q", "1/2"]).status.code(), Some(1));
    assert_eq!(qball(&["gram", "--lambda", "3", "--q", "0.5"]).status.code(), Some(1));
    assert_eq!(qball(&["gram", "--lambda", "3"]).status.code(), Some(1));
    assert_eq!(qball(&["gram", "--lambda", "5/2", "--q", "1/2"]).status.code(), Some(1));
    assert_eq!(qball(&["gram", "--lambda", "3", "--q", "3/2"]).status.code(), Some(1));
}

#[test]
fn truncation_failure_exits_with_two() {
    let out = qball(&[
        "gram",
        "--q",
        "99/100",
        "--lambda",
        "2",
        "--degree",
        "0",
        "--tolerance",
        "1/10000000000000000000000000000000000000000",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("did not stabilize"));
}

#[test]
fn norms_table() {
    let doc = json(&qball(&["norms", "--m", "1", "--n", "2", "--q", "1/2", "--lambda", "4", "--degree", "1"]));
    let norms = doc["norms"].as_array().unwrap();
    assert_eq!(norms.len(), 3);
    assert!((norms[0]["approx"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!(norms[1]["approx"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "--suite", "kernels", "--m", "2", "--n", "2", "--degree", "3"][..],
        &["verify", "--suite", "crosscheck", "--m", "1", "--n", "2", "--lambda", "4", "--q", "1/2", "--degree", "2"][..],
        &["verify", "--suite", "algebra", "--m", "3", "--n", "3"][..],
        &["verify", "--suite", "fock", "--m", "1", "--n", "2", "--degree", "1"][..],
    ] {
        let doc = json(&qball(args));
        assert_eq!(doc["passed"], true, "{args:?}");
        assert!(!doc["checks"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_rejects_unknown_suite() {
    assert_eq!(qball(&["verify", "--suite", "everything"]).status.code(), Some(1));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "m = 1\nn = 2\ndegree = 1\nlambda = \"formal\"\n").unwrap();
    let p = path.to_str().unwrap();
    let doc = json(&qball(&["expand", "--config", p]));
    assert_eq!(doc["config"]["n"], 2);
    assert_eq!(doc["config"]["degree"], 1);
    let doc = json(&qball(&["expand", "--config", p, "--degree", "2"]));
    assert_eq!(doc["config"]["degree"], 2);
    assert_eq!(doc["series"]["terms"].as_array().unwrap().len(), 3);

    std::fs::write(&path, "m = 1\nwidth = 3\n").unwrap();
    assert_eq!(qball(&["expand", "--config", p]).status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    let p = path.to_str().unwrap();
    let out = qball(&["expand", "--degree", "1", "--out", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["config"]["out"], p);
    let c: QUFun = parse_qufun(&first_coeff(&doc, 1)).unwrap();
    assert_eq!(c, parse_qufun("(1-l)/(1-q^2)").unwrap());
}
