use std::path::PathBuf;
use std::process::{Command, Output};

use dloc::groebner::same_left_ideal;
use dloc::{parse_operator, Limits, TermOrder, WeylContext, WeylElement};
use serde_json::Value;

fn problems() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn dloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dloc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn problem(name: &str) -> String {
    problems().join(name).to_string_lossy().into_owned()
}

fn structured(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--emit", "structured"]);
    let out = dloc(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn scratch(name: &str, body: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn localize_monomial() {
    let doc = structured(&["localize", &problem("monomial_neg7.txt")]);
    assert_eq!(doc["k"], 6);
    assert_eq!(doc["b_coefficients"], serde_json::json!([0, -6, 1]));
    assert_eq!(doc["generator"], "(x)^-8");
    assert_eq!(doc["natural_map_factor"], "x^6");
}

#[test]
fn localize_cusp_matches_known_annihilator() {
    let doc = structured(&["localize", &problem("cusp.txt")]);
    assert_eq!(doc["k"], 0);
    assert_eq!(doc["integer_roots"], serde_json::json!([-2, 0]));
    let ctx = WeylContext::new(&["x", "y"]).unwrap();
    let got: Vec<WeylElement> = doc["annihilator"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| parse_operator(s.as_str().unwrap(), &ctx).unwrap())
        .collect();
    let want: Vec<WeylElement> = [
        "-3*x*Dx-2*y*Dy-18",
        "3*y^2*Dx+2*x*Dy",
        "-2*y^3*Dy+2*x^2*Dy-18*y^2",
    ]
    .iter()
    .map(|s| parse_operator(s, &ctx).unwrap())
    .collect();
    assert!(same_left_ideal(&got, &want, &TermOrder::Grevlex, Limits::default()).unwrap());
}

#[test]
fn apply_reports_zero() {
    let doc = structured(&[
        "apply",
        "--vars",
        "x",
        "--op",
        "x*Dx+1",
        "--function",
        "1/x",
    ]);
    assert_eq!(doc["applied"], serde_json::json!(["0"]));
}

#[test]
fn verify_json_problem() {
    let doc = structured(&["verify", &problem("exponential.json"), "--no-diagnostics"]);
    assert_eq!(doc["verified"], true);
    assert_eq!(doc["annihilator"].as_array().unwrap().len(), 8);
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let run = || {
        let mut doc = structured(&["localize", &problem("cusp.txt"), "--tie-break", "lex"]);
        doc.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&doc).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn text_output_and_file_output() {
    let out = dloc(&["localize", &problem("identity.txt")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("k: 0\n"), "{text}");
    assert!(text.contains("annihilator:\n"), "{text}");
    let target = scratch("doc.json", "");
    let out = dloc(&[
        "bfunction",
        &problem("monomial_half.txt"),
        "--emit",
        "structured",
        "-o",
        &target,
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(doc["b"], "2*s^2+3*s");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| dloc(args).status.code().unwrap();
    assert_eq!(code(&["localize", &problem("cusp.txt")]), 0);
    let bad = scratch("bad.txt", "vars: x\nf: x\ngens: x*Dx+\n");
    assert_eq!(code(&["localize", &bad]), 2);
    let reserved = scratch("reserved.txt", "vars: Dx\nf: 1\ngens: 1\n");
    assert_eq!(code(&["localize", &reserved]), 2);
    assert_eq!(code(&["localize", "/nonexistent/problem.txt"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    let zero = scratch("zero.txt", "vars: x, y\nf: x\ngens: Dy\n");
    assert_eq!(code(&["localize", &zero]), 3);
    assert_eq!(
        code(&["localize", &problem("cusp.txt"), "--max-steps", "2"]),
        4
    );
    assert_eq!(
        code(&[
            "verify",
            &problem("monomial_neg7.txt"),
            "--function",
            "1/x^2"
        ]),
        5
    );
    assert_eq!(code(&["verify", &problem("identity.txt")]), 2);
}

#[test]
fn zero_module_report() {
    let unit = scratch("unit.txt", "vars: x\nf: x\ngens: x\n");
    let doc = structured(&["localize", &unit]);
    assert_eq!(doc["zero_module"], true);
    assert!(doc.get("k").is_none());
    assert_eq!(doc["annihilator"], serde_json::json!(["1"]));
}
