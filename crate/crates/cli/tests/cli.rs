use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn structured(args: &[&str]) -> Value {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("structured output is JSON")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

#[test]
fn reduce_pinches() {
    let o = run(&["reduce", "--group", "BS(1,2)", "--word", "t^-1 a t a^-2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "reduced: 1\ntrivial: true\n");

    let o = run(&["reduce", "--group", "BS(2,3)", "--word", "t^-1 a^2 t"]);
    assert_eq!(stdout(&o), "reduced: a^3\ntrivial: false\n");

    let o = run(&["reduce", "--group", "BS(2,3)", "--word", "t^-1 a t"]);
    assert!(stdout(&o).starts_with("reduced: t^-1 a t\n"));
}

#[test]
fn eval_conjugates_by_t() {
    let o = run(&["eval", "--group", "G(2,3)", "--word", "t a t^-1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("(2/3, 0)"), "{}", stdout(&o));
}

#[test]
fn classify_examples() {
    let o = run(&["classify", "--group", "G(2,3)", "--elems", "(1/2,1);(1/3,1)"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("case: contains-gildenhuys"));
    assert!(text.contains("d: (1/6, 0)"));

    let v = structured(&["classify", "--group", "G(2,3)", "--elems", "(1,0);(1/2,0)"]);
    assert!(v.to_string().contains("inside-h"), "{v}");
}

#[test]
fn witnesses_verify() {
    let o = run(&["witness", "--group", "G(2,3)", "--kind", "csa"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("g^-1 h g = (9/2, 0)"));
    assert!(stdout(&o).ends_with("verified: true\n"));

    let v = structured(&["witness", "--group", "G(2,3)", "--kind", "weak-ah"]);
    assert_eq!(v["verified"], Value::Bool(true));

    let v = structured(&["witness", "--group", "G(1,1)", "--kind", "csa"]);
    assert!(v["witness"].is_null());

    let o = run(&["witness", "--group", "BS(2,3)", "--kind", "z2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[u, v] trivial: true"));
}

#[test]
fn certificate_for_one_ninth() {
    let o = run(&["cert", "--group", "G(2,3)", "--target", "1/n^2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("target: 1/9"));
    assert!(text.contains("word value: (1/9, 0)"));
    assert!(text.ends_with("verified: true\n"));
}

#[test]
fn pi1_of_trefoil_and_collapse() {
    let o = run(&["pi1", "--input", &fixture("trefoil.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("simplified: < a, b | a^2 b^-3 >"));
    assert!(stdout(&o).contains("abelianization: Z\n"));

    let v = structured(&["pi1", "--input", &fixture("double_loop.json"), "--keep", "e"]);
    assert!(v.to_string().contains("hnn"), "{v}");

    let v = structured(&["pi1", "--input", &fixture("path3.json"), "--essential"]);
    assert!(v.to_string().contains("\"essential\":false"), "{v}");
}

#[test]
fn verify_passes_and_is_structured() {
    let o = run(&["verify", "--suite", "oracle", "--trials", "20"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("verdict: pass\n"));

    let v = structured(&["verify", "--suite", "gog"]);
    assert_eq!(v["verdict"], "pass");
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_reports_do_not_depend_on_jobs() {
    for suite in ["ct", "oracle", "classify"] {
        let serial = run(&["verify", "--suite", suite, "--trials", "40", "--seed", "9", "--jobs", "1"]);
        let parallel = run(&["verify", "--suite", suite, "--trials", "40", "--seed", "9", "--jobs", "3"]);
        assert_eq!(code(&serial), 0, "{suite}");
        assert_eq!(serial.stdout, parallel.stdout, "{suite}");
    }
}

#[test]
fn exit_code_for_verification_failure() {
    let o = run(&["verify", "--suite", "gog", "--input", &fixture("trefoil.json"), "--expect", "Z^2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).ends_with("verdict: fail\n"));
}

#[test]
fn exit_code_for_bad_input() {
    for args in [
        &["reduce", "--group", "BS(0,2)", "--word", "a"][..],
        &["reduce", "--group", "BS(1,2)", "--word", "b"],
        &["reduce", "--group", "BS(1,2)", "--word", "a^"],
        &["eval", "--group", "G(6,2)", "--word", "a"],
        &["witness", "--group", "G(2,3)", "--kind", "nope"],
        &["pi1", "--input", "/nonexistent/gog.json"],
        &["verify", "--suite", "gog", "--input", &fixture("trefoil.json"), "--expect", "Z;Z"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn exit_code_for_domain_error() {
    let o = run(&["verify", "--suite", "oracle", "--group", "BS(1,1)", "--trials", "3"]);
    assert_eq!(code(&o), 3);
    let o = run(&["witness", "--group", "BS(1,2)", "--kind", "z2"]);
    assert_eq!(code(&o), 3);
}
