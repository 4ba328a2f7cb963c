use std::process::{Command, Output};

use serde_json::Value;

fn pmskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmskit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn without_timestamp(mut v: Value) -> Value {
    v["meta"]["timestamp"] = Value::Null;
    v
}

#[test]
fn stuffle_product() {
    let out = pmskit(&["product", "--type", "stuffle", "1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let expect: Value =
        serde_json::from_str(r#"[{"coef":"2","word":[1,1]},{"coef":"1","word":[2]}]"#).unwrap();
    assert_eq!(v["terms"], expect);
    assert_eq!(v["meta"]["flags"]["max_weight"], 6);
}

#[test]
fn rational_coefficients_are_strings() {
    let v = json(&pmskit(&["map", "regularize", "1,1"]));
    let parts = v["parts"].as_array().unwrap();
    let terms = &parts[0]["coefficient"]["terms"];
    assert_eq!(terms[0]["coef"], "-1/2");
    assert_eq!(terms[0]["word"], serde_json::json!([2]));
}

#[test]
fn kernel_equality_suite_passes() {
    let out = pmskit(&[
        "verify",
        "kernel-equality",
        "--max-weight",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["name"], "kernel-equality");
    assert_eq!(v["passed"], true);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 6);
    assert!(cases.iter().all(|c| c["equal"] == true));
}

#[test]
fn eval_zeta_two() {
    let out = pmskit(&[
        "eval", "pms", "--index", "2", "--alpha", "0", "--tol", "1e-8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let re = v["value"]["re"].as_f64().unwrap();
    assert!((re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-8);
    assert!(v["value"]["err"].as_f64().unwrap() < 1e-8);
}

#[test]
fn complex_alpha_list() {
    let v = json(&pmskit(&[
        "eval", "hurwitz", "--index", "2", "--alpha", "0.5", "--alpha", "-0.3,0.1",
    ]));
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(results[1]["alpha"]["im"], 0.1);
    assert!(results[1]["value"]["im"].as_f64().unwrap() != 0.0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["verify", "kernel-equality", "--max-weight", "-3"],
        &["product", "--bogus", "1", "1"],
        &["eval", "pms", "--index", "1,1"],
        &["eval", "pms", "--index", "2", "--alpha", "-1.5"],
        &["eval", "pms", "--index", "2", "--alpha", "abc"],
        &["kernel", "--weight", "0"],
        &["map", "psi", "x"],
        &["verify", "lemma3", "--format", "csv"],
    ] {
        let out = pmskit(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn failed_check_exits_one() {
    let out = pmskit(&["decompose", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = pmskit(&["decompose", "2", "2*1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn dims_csv() {
    let out = pmskit(&["dims", "--max-weight", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "weight,slice_dim,kernel_dim,span_dim,equal");
    assert_eq!(lines[3], "3,4,2,2,true");
    assert_eq!(lines.len(), 5);
}

#[test]
fn reproducible_output() {
    let args = [
        "verify",
        "homomorphism",
        "--max-weight",
        "4",
        "--samples",
        "20",
        "--seed",
        "11",
        "--deterministic-sum",
        "--trunc-n",
        "20000",
    ];
    let a = without_timestamp(json(&pmskit(&args)));
    let b = without_timestamp(json(&pmskit(&args)));
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert_eq!(a["passed"], true);
    assert_eq!(a["meta"]["flags"]["seed"], 11);
}

#[test]
fn numeric_suites_pass() {
    for suite in ["kyx", "eq3", "key-lemma", "theorem1"] {
        let out = pmskit(&["verify", suite, "--max-weight", "3", "--trunc-n", "200000"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_eq!(json(&out)["name"], suite);
    }
}
