use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn freecurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freecurve")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    freecurve(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = freecurve(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("freecurve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        vec!["--json", "analyze", "@catalog:MacLane8"],
        vec!["--json", "classify", "--all"],
        vec!["--json", "deform", "@catalog:A1_6", "--point", "1:1:1", "--line", "3"],
    ] {
        let a = freecurve(&args);
        let b = freecurve(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_field_names_are_fixed() {
    let v = json(&["analyze", "@catalog:A5_free"]);
    for key in ["d", "field", "t2", "t3", "t_higher", "mu", "tau", "mdr", "eta", "verdict", "exponents", "b", "notes"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn catalog_and_polynomial_analyses_agree() {
    for name in ["A4_generic", "A5_nearlyfree", "A1_6", "B7_free", "MacLane8"] {
        let a = json(&["analyze", &format!("@catalog:{name}")]);
        let shown = json(&["catalog", "show", name]);
        let lines: Vec<String> =
            shown["lines"].as_array().unwrap().iter().map(|l| format!("({})", l.as_str().unwrap())).collect();
        let poly = lines.join("*");
        let tau = a["mu"].to_string();
        let p = json(&["analyze", "--poly", &poly, "--tau", &tau]);
        for key in ["mdr", "eta", "verdict", "exponents", "b"] {
            assert_eq!(a[key], p[key], "{name}: {key}");
        }
    }
}

#[test]
fn lines_files_are_read() {
    let path = temp_file("braid.lines", "# braid arrangement\nfield: Q\n1 0 0\n0 1 0\n0 0 1\n1 -1 0\n0 1 -1\n1 0 -1\n");
    let v = json(&["analyze", path.to_str().unwrap()]);
    assert_eq!(v["verdict"], "Free");
    assert_eq!(v["mu"], 19);

    let bad = temp_file("bad.lines", "1 0\n");
    assert_eq!(code(&["analyze", bad.to_str().unwrap()]), 2);
    let missing = temp_file("x.lines", "").with_file_name("does-not-exist.lines");
    assert_eq!(code(&["analyze", missing.to_str().unwrap()]), 2);
}

#[test]
fn field_mismatch_exits_with_3() {
    let path = temp_file("omega.lines", "field: Q\n1 -w 0\n0 1 0\n0 0 1\n");
    assert_eq!(code(&["analyze", path.to_str().unwrap()]), 3);
    assert_eq!(code(&["--field", "Q", "analyze", "@catalog:DualHesse9"]), 3);
    assert_eq!(code(&["--field", "Q", "analyze", "--poly", "x^2 + w*y^2", "--tau", "1"]), 3);
    assert_eq!(code(&["--field", "Qw", "analyze", "@catalog:A1_6"]), 0);
}

#[test]
fn input_errors_exit_with_2() {
    assert_eq!(code(&["catalog", "show", "NOPE"]), 2);
    assert_eq!(code(&["analyze", "--poly", "x^2 + y", "--tau", "1"]), 2);
    assert_eq!(code(&["analyze", "--poly", "x^2 + y^2"]), 2);
    assert_eq!(code(&["analyze", "@catalog:A1_6", "--tau", "19"]), 2);
    assert_eq!(code(&["classify", "--dmin", "8", "--dmax", "4"]), 2);
    assert_eq!(code(&["classify", "--dmin", "1", "--dmax", "4"]), 2);
    assert_eq!(code(&["bounds", "--d", "1"]), 2);
    assert_eq!(code(&["delete", "@catalog:A1_6", "--line", "6"]), 2);
    assert_eq!(code(&["deform", "@catalog:A1_6", "--point", "1:1:1", "--line", "3", "--dir", "y", "--eps", "0"]), 2);
    let err = freecurve(&["analyze", "--poly", "x^2 + * y", "--tau", "1"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("position"));
}

#[test]
fn non_generic_deformation_exits_with_4() {
    // eps = 1 moves x - y onto x.
    assert_eq!(code(&["deform", "@catalog:A1_6", "--point", "1:1:1", "--line", "3", "--dir", "y", "--eps", "1"]), 4);
    assert_eq!(code(&["deform", "@catalog:DualHesse9", "--point", "1:1:1", "--line", "0"]), 4);
}

#[test]
fn deformation_search_without_direction() {
    let v = json(&["deform", "@catalog:A5_free", "--point", "0:0:1", "--line", "0"]);
    assert_eq!(v["after"]["verdict"], "NearlyFree");
    assert_eq!(v["tau_drop"], true);
}

#[test]
fn deleting_to_one_line_reports_a_note() {
    let path = temp_file("two.lines", "1 0 0\n0 1 0\n");
    let v = json(&["delete", path.to_str().unwrap(), "--line", "0"]);
    assert_eq!(v["d"], 1);
    assert_eq!(v["mdr"], Value::Null);
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn catalog_listing() {
    let v = json(&["catalog", "list"]);
    assert_eq!(v.as_array().unwrap().len(), 10);
    let show = json(&["catalog", "show", "A1_6"]);
    assert_eq!(show["lines"].as_array().unwrap().len(), 6);
    assert_eq!(show["combinatorics"], "(6; 3, 4)");
}

#[test]
fn classify_with_exclusion_file() {
    let path = temp_file("excl.txt", "# none of these exist\n6 6 3 # made up\n");
    let v = json(&["classify", "--dmin", "6", "--dmax", "6", "--exclusions", path.to_str().unwrap()]);
    assert!(v.as_array().unwrap().is_empty());
    let none = json(&["classify", "--dmin", "10", "--dmax", "12"]);
    assert!(none.as_array().unwrap().is_empty());
    let text = String::from_utf8(freecurve(&["classify"]).stdout).unwrap();
    assert!(text.contains("admissible: 5"));
}

#[test]
fn bounds_text_output() {
    let text = String::from_utf8(freecurve(&["bounds", "--d", "11"]).stdout).unwrap();
    assert!(text.contains("contradiction"));
    assert!(text.contains("19"));
    let v = json(&["bounds", "--d", "2"]);
    assert_eq!(v["verdict"], "consistent");
    assert_eq!(v["t3_lower_bound"], 0);
}
