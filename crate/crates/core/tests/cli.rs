use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn eacp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eacp")).args(args).env("EACP_SEED", "7").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(o)))
}

fn write_algebra(name: &str, body: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eacp_cli_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

fn c6_file() -> PathBuf {
    write_algebra("c6.json", &json!({"A": [["1/2", "1/2"], ["1/2", "0"]], "b": ["1/2", "0"]}))
}

#[test]
fn periods_of_c6() {
    let path = c6_file();
    let out = eacp(&["periods", "--algebra", path.to_str().unwrap(), "--mmax", "16", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["p"], json!([1, 2]));
    assert_eq!(v["q"], json!(["1", "inf"]));
}

#[test]
fn product_in_two_dimensions() {
    let path = write_algebra("c2_2d.json", &json!({"A": [["1/2"]], "b": ["1/2"]}));
    let out = eacp(&["mul", "--algebra", path.to_str().unwrap(), "--x", "h", "--y", "r"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1/2 h + 1/2 r");
}

#[test]
fn reference_check_reports_the_table() {
    let out = eacp(&["paper-check"]);
    // the C4/D5 entry disagrees with the multiplication table
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("3d:C4"));
    let v = json_of(&eacp(&["paper-check", "--json"]));
    assert!(v.is_object());
}

#[test]
fn input_errors_exit_one() {
    let missing = eacp(&["info", "--algebra", "/nonexistent/alg.json"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));

    let bad = write_algebra("bad.json", &json!({"A": [["1", "x"], ["0", "0"]], "b": ["0", "0"]}));
    let out = eacp(&["info", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("A"), "error should point at the field");

    assert_eq!(eacp(&["mul", "--catalog", "3d:C1", "--x", "h7", "--y", "r"]).status.code(), Some(1));
    assert_eq!(eacp(&["catalog", "3d:C5(0)"]).status.code(), Some(1));
    assert_eq!(eacp(&["info"]).status.code(), Some(1));
}

#[test]
fn undetermined_exits_two() {
    let zero = write_algebra("zero.json", &json!({"A": [["0", "0"], ["0", "0"]], "b": ["0", "0"]}));
    let out = eacp(&["classify", "--algebra", zero.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let path = c6_file();
    let p = path.to_str().unwrap();
    for cmd in [
        vec!["info"],
        vec!["periods"],
        vec!["canonical-form"],
        vec!["ideals1"],
        vec!["simple"],
        vec!["classify"],
        vec!["verify", "--cases", "3"],
    ] {
        let mut args = cmd.clone();
        args.extend(["--algebra", p, "--json"]);
        let (a, b) = (eacp(&args), eacp(&args));
        assert_eq!(a.status.code(), Some(0), "{cmd:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{cmd:?} output differs between runs");
    }
}

#[test]
fn catalog_entries_round_trip_through_files() {
    let list = eacp(&["catalog"]);
    assert_eq!(list.status.code(), Some(0));
    assert!(stdout(&list).contains("C8"));
    let entry = eacp(&["catalog", "3d:C7(2)", "--json"]);
    assert_eq!(entry.status.code(), Some(0));
    let alg = json_of(&entry);
    let body = alg.get("algebra").cloned().unwrap_or(alg);
    let path = write_algebra("c7.json", &body);
    let out = eacp(&["classify", "--algebra", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("3d:C7(2)"));
}

#[test]
fn closed_form_and_powers() {
    let out = eacp(&["plenary", "--catalog", "3d:C6(1,1)", "--i", "1", "--m", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let direct = eacp(&["plenary", "--catalog", "3d:C6(1,1)", "--x", "1/2 h1 + 1/2 r", "--m", "2"]);
    assert_eq!(direct.status.code(), Some(0));
    let pow = eacp(&["pow", "--catalog", "2d:C2", "--x", "h + r", "--k", "3"]);
    assert_eq!(pow.status.code(), Some(0));
}

#[test]
fn float_field_with_epsilon() {
    let out = eacp(&["simple", "--catalog", "3d:C6(1,1)", "--field", "float", "--epsilon", "1/1000000", "--json"]);
    assert!(matches!(out.status.code(), Some(0) | Some(2)), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(eacp(&["info", "--catalog", "3d:C1", "--epsilon=-1"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(eacp(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(eacp(&["mul", "--catalog", "3d:C1"]).status.code(), Some(1));
    assert_eq!(eacp(&["--help"]).status.code(), Some(0));
}
