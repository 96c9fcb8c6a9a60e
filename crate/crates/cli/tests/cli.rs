use std::process::{Command, Output};

use qsphere::projectors::{export_words, from_json, import, projector, to_json, Imported};

fn qsphere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsphere"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn normalize_examples() {
    let o = qsphere(&["normalize", "a * a* + b * b*"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + mu");
    let o = qsphere(&["normalize", "a* * b* - b* * a*"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = qsphere(&["normalize", "--basis", "sphere", "b* * a"]);
    assert_eq!(stdout(&o).trim(), "inv(1-mu) * Z");
}

#[test]
fn parse_errors_are_usage_errors() {
    let o = qsphere(&["normalize", "inv(1+0*mu)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column"), "{}", stderr(&o));
    let o = qsphere(&["normalize", "a + q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 5"), "{}", stderr(&o));
    assert_eq!(
        qsphere(&["chern", "--charge", "1", "--grid", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qsphere(&["verify-projector", "--charge", "1", "--format", "latex"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qsphere(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn degree_mismatch_fails_sphere_basis() {
    let o = qsphere(&["normalize", "--basis", "sphere", "a"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn relations_and_mutation() {
    let o = qsphere(&["verify-relations", "--k-max", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verify-relations: pass\n"));
    let o = qsphere(&["verify-relations", "--k-max", "2", "--tamper-r4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn checks_pass_with_exit_zero() {
    for args in [
        &["verify-galois", "--n-max", "2"][..],
        &["verify-connection", "--n-max", "2"],
        &["verify-projector", "--charge", "-2"],
        &["symmetry", "--charge", "2"],
        &["rep-check", "--dim", "3", "--sigma", "1", "--charge", "2"],
    ] {
        let o = qsphere(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn singular_representation() {
    let o = qsphere(&["rep-check", "--dim", "1", "--sigma", "-1", "--charge", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("(1+1*mu)"), "{}", stderr(&o));
    let o = qsphere(&["rep-check", "--dim", "2", "--sigma", "-1", "--charge", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = qsphere(&["rep-check", "--dim", "3", "--sigma", "-1", "--charge", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn projector_json_matches_library() {
    let o = qsphere(&[
        "projector",
        "--charge",
        "-2",
        "--basis",
        "word",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let doc = from_json(&text).unwrap();
    assert_eq!(import(&doc).unwrap(), Imported::Words(projector(-2)));
    assert_eq!(to_json(&export_words(&projector(-2))) + "\n", text);
}

#[test]
fn projector_latex() {
    let o = qsphere(&["projector", "--charge", "1", "--format", "latex"]);
    let tex = stdout(&o);
    assert!(tex.starts_with("p(u) = \\left("));
    assert!(tex.contains("Z^{\\ast} & \\frac{1}{2}(1+\\mu) - X"));
}

#[test]
fn chern_output() {
    let o = qsphere(&["chern", "--charge", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chern"], 0.0);
    let o = qsphere(&["chern", "--charge", "2", "--grid", "40", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = v["orientation"].as_f64().unwrap();
    assert!((v["chern"].as_f64().unwrap() - 2.0 * c).abs() < 1e-3);
}

#[test]
fn quick_suite_is_deterministic() {
    let a = qsphere(&["suite", "quick", "--format", "json"]);
    let b = qsphere(&["suite", "quick", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "qsphere-suite/1");
    assert_eq!(v["sections"].as_array().unwrap().len(), 10);
}
