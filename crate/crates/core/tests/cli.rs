//! End-to-end runs of the `spinordual` binary.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinordual"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn input(doc: &Value) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(doc.to_string().as_bytes()).unwrap();
    file
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn spinor_doc() -> Value {
    json!({"components": [[1.0, 0.0], [0.0, 0.0], [0.5, 0.0], [0.0, 0.2]]})
}

fn scalar_set(phi: f64) -> Value {
    json!({
        "Phi": [phi, 0.0], "Theta": [0.0, 0.0],
        "U": vec![[0.0, 0.0]; 4], "S": vec![[0.0, 0.0]; 4], "M": vec![[0.0, 0.0]; 6]
    })
}

fn re(x: &Value) -> f64 {
    x[0].as_f64().unwrap()
}

#[test]
fn classify_reports_both_labels_and_conventions() {
    let file = input(&spinor_doc());
    let out = ok(&["classify", file.path().to_str().unwrap()]);
    assert_eq!(out["schema"], "spinordual/v1");
    assert_eq!(out["command"], "classify");
    assert_eq!(out["conventions"]["fingerprint"], "weyl-chiral/v1;eps0123=+1;pi=+1;gk=-1");
    assert_eq!(out["payload"]["standard_class"], "2");
    assert_eq!(out["payload"]["extended_class"], "2");
    assert_eq!(out["payload"]["fpk"]["passes"], true);
    assert!(out["payload"].get("generalized").is_none());
}

#[test]
fn output_is_byte_identical_across_runs() {
    let file = input(&spinor_doc());
    let path = file.path().to_str().unwrap();
    assert_eq!(run(&["classify", path]).stdout, run(&["classify", path]).stdout);
    assert_eq!(run(&["representative", "4.1"]).stdout, run(&["representative", "4.1"]).stdout);
}

#[test]
fn floats_use_fixed_scientific_notation() {
    let file = input(&spinor_doc());
    let text = String::from_utf8(run(&["classify", file.path().to_str().unwrap()]).stdout).unwrap();
    assert!(text.contains("\"Phi\":[1.0000000000000000e0,0.0000000000000000e0]"));
}

#[test]
fn classify_with_identity_dual_matches_dirac() {
    let mut doc = spinor_doc();
    doc["dual"] = json!({"a": [1.0, 0.0]});
    let file = input(&doc);
    let out = ok(&["classify", file.path().to_str().unwrap()]);
    let generalized = &out["payload"]["generalized"];
    assert!(generalized["max_deviation"].as_f64().unwrap() < 1e-12);
    assert_eq!(generalized["closed_form"], out["payload"]["dirac"]["bilinears"]);
}

#[test]
fn representative_round_trips_through_classify() {
    let rep = ok(&["representative", "4.1"]);
    assert_eq!(rep["payload"]["achieved"], "4.1");
    let doc = json!({"components": rep["payload"]["seed"], "dual": rep["payload"]["dual"]});
    let file = input(&doc);
    let out = ok(&["classify", file.path().to_str().unwrap()]);
    assert_eq!(out["payload"]["extended_class"], "4.1");
    assert!(out["payload"]["generalized"]["max_deviation"].as_f64().unwrap() < 1e-10);
}

#[test]
fn representative_for_class_5_1_keeps_only_m() {
    let rep = ok(&["representative", "5.1"]);
    assert_eq!(rep["payload"]["achieved"], "5.1");
    assert_eq!(rep["payload"]["zero_pattern"], json!([true, true, true, true, false]));
}

#[test]
fn standard_representatives_use_the_dirac_dual() {
    for label in ["1", "2", "3", "4", "5", "6"] {
        let rep = ok(&["representative", label]);
        assert_eq!(rep["payload"]["achieved"], label);
        assert_eq!(re(&rep["payload"]["dual"]["a"]), 1.0);
        assert_eq!(re(&rep["payload"]["dual"]["b"]), 0.0);
    }
    assert_eq!(ok(&["representative", "1.6"])["payload"]["achieved"], "1.6");
}

#[test]
fn infeasible_target_exits_4_with_a_trail() {
    let out = run(&["representative", "1.1"]);
    assert_eq!(out.status.code(), Some(4));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["payload"]["infeasible"], true);
    assert!(!doc["payload"]["trail"].as_array().unwrap().is_empty());
    assert!(doc["payload"]["obstruction"].as_str().unwrap().len() > 10);
}

#[test]
fn unknown_label_exits_2() {
    assert_eq!(run(&["representative", "9"]).status.code(), Some(2));
}

#[test]
fn malformed_input_exits_2_with_a_location() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(b"{\"components\": [[1, 0], [0, 0], [0, \"x\"], [0, 0]]}").unwrap();
    let out = run(&["classify", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("components"), "{stderr}");

    let short = input(&json!({"components": [[1.0, 0.0]]}));
    assert_eq!(run(&["classify", short.path().to_str().unwrap()]).status.code(), Some(2));

    let extra = input(&json!({"components": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]], "bogus": 1}));
    assert_eq!(run(&["classify", extra.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(run(&["classify", "/nonexistent/spinor.json"]).status.code(), Some(2));
}

#[test]
fn decompose_identity_and_non_conforming_matrices() {
    let identity: Vec<Vec<[f64; 2]>> =
        (0..4).map(|i| (0..4).map(|k| [if i == k { 1.0 } else { 0.0 }, 0.0]).collect()).collect();
    let file = input(&json!({"matrix": identity}));
    let out = ok(&["decompose", file.path().to_str().unwrap()]);
    assert_eq!(re(&out["payload"]["multivector"]["scalar"]), 1.0);
    assert_eq!(out["payload"]["real"], true);

    let imaginary: Vec<Vec<[f64; 2]>> =
        (0..4).map(|i| (0..4).map(|k| [0.0, if i == k { 1.0 } else { 0.0 }]).collect()).collect();
    let file = input(&json!({"matrix": imaginary}));
    let out = ok(&["decompose", file.path().to_str().unwrap()]);
    assert_eq!(out["payload"]["warnings"], json!(["non-real"]));
}

#[test]
fn decompose_round_trips_both_directions() {
    let file = input(&json!({"matrix": [
        [[1.0, 0.0], [0.0, 0.0], [0.3, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.3, 0.0]],
        [[0.3, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [0.3, 0.0], [0.0, 0.0], [1.0, 0.0]]
    ]}));
    let mv = ok(&["decompose", file.path().to_str().unwrap()]);
    let back_file = input(&mv["payload"]["multivector"]);
    let back = ok(&["decompose", "--direction", "to-matrix", back_file.path().to_str().unwrap()]);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(file.path()).unwrap()).unwrap();
    for i in 0..4 {
        for k in 0..4 {
            for part in 0..2 {
                let x = back["payload"]["matrix"][i][k][part].as_f64().unwrap();
                let y = original["matrix"][i][k][part].as_f64().unwrap();
                assert!((x - y).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn fpk_passes_on_dirac_bilinears_and_names_the_worst_identity() {
    let rep = ok(&["classify", input(&spinor_doc()).path().to_str().unwrap()]);
    let mut b = rep["payload"]["dirac"]["bilinears"].clone();
    b.as_object_mut().unwrap().remove("Sigma");
    let out = ok(&["fpk", input(&b).path().to_str().unwrap()]);
    assert_eq!(out["payload"]["passes"], true);

    b["Phi"] = json!([3.0, 0.0]);
    let out = ok(&["fpk", input(&b).path().to_str().unwrap()]);
    assert_eq!(out["payload"]["passes"], false);
    assert_eq!(out["payload"]["worst"], "M_M");
}

#[test]
fn fpk_of_the_zero_set_passes() {
    let zero = scalar_set(0.0);
    let out = ok(&["fpk", input(&zero).path().to_str().unwrap()]);
    assert_eq!(out["payload"]["passes"], true);
}

#[test]
fn invert_round_trips_through_classify() {
    let rep = ok(&["classify", input(&spinor_doc()).path().to_str().unwrap()]);
    let mut b = rep["payload"]["dirac"]["bilinears"].clone();
    b.as_object_mut().unwrap().remove("Sigma");
    let out = ok(&["invert", input(&b).path().to_str().unwrap()]);
    let recovered = json!({"components": out["payload"]["spinor"]});
    let again = ok(&["classify", input(&recovered).path().to_str().unwrap()]);
    let x = &again["payload"]["dirac"]["bilinears"];
    let y = &rep["payload"]["dirac"]["bilinears"];
    for key in ["Phi", "Theta"] {
        assert!((re(&x[key]) - re(&y[key])).abs() < 1e-8);
    }
    for key in ["U", "S", "M"] {
        for (p, q) in x[key].as_array().unwrap().iter().zip(y[key].as_array().unwrap()) {
            assert!((re(p) - re(q)).abs() < 1e-8);
        }
    }
}

#[test]
fn invert_rejects_a_non_fpk_set_with_exit_3() {
    let bad = scalar_set(1.0);
    assert_eq!(run(&["invert", input(&bad).path().to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let out = run(&["--output", target.to_str().unwrap(), "representative", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(doc["payload"]["achieved"], "3");
}
