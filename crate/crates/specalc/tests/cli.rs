use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn specalc(args: &[&str]) -> Output {
    specalc_env(args, None)
}

fn specalc_env(args: &[&str], max_n: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_specalc"));
    cmd.args(args).env_remove("SPECALC_MAX_N");
    if let Some(v) = max_n {
        cmd.env("SPECALC_MAX_N", v);
    }
    cmd.output().expect("run specalc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = specalc(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn validator() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/output-schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// No JSON number anywhere: integers travel as strings.
fn has_number(v: &Value) -> bool {
    match v {
        Value::Number(_) => true,
        Value::Array(a) => a.iter().any(has_number),
        Value::Object(m) => m.values().any(has_number),
        _ => false,
    }
}

#[test]
fn every_command_emits_schema_valid_lossless_json() {
    let v = validator();
    let runs: &[&[&str]] = &[
        &["counts", "hct(E)", "--n", "10"],
        &["types", "aprod(Lp,Lp)", "--n", "8"],
        &["zindex", "aprod(Ep, C)", "--n", "4"],
        &["dirichlet", "C", "--n", "5"],
        &["check", "maprod(E,E)", "--n", "4"],
        &["enumerate", "necklace(2) * OnePlusXpow(2)", "--n", "2"],
        &["table", "rect", "--n", "6"],
        &["table", "krect", "--k", "3", "--n", "8"],
        &["table", "prect", "--k", "2", "--n", "5"],
        &["table", "mnr", "--m", "2", "--n", "3"],
        &["table", "pittel", "--k", "2", "--n", "3", "--tol", "1e-6"],
    ];
    for args in runs {
        let out = json(args);
        let errors: Vec<String> = v.iter_errors(&out).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        assert!(!has_number(&out), "{args:?} emitted a JSON number");
        let columns: Vec<&str> = out["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        for row in out["rows"].as_array().unwrap() {
            let keys: Vec<&str> = row.as_object().unwrap().keys().map(String::as_str).collect();
            let mut want = columns.clone();
            want.sort();
            let mut keys = keys;
            keys.sort();
            assert_eq!(keys, want);
        }
    }
}

#[test]
fn big_integers_survive_json() {
    let out = json(&["counts", "L", "--n", "30"]);
    assert_eq!(out["rows"][30]["count"], "265252859812191058636308480000000");
}

#[test]
fn rationals_in_each_format() {
    let out = json(&["dirichlet", "C", "--n", "3"]);
    assert_eq!(out["rows"][1]["coeff"], serde_json::json!({"num": "1", "den": "2"}));
    let plain = stdout(&specalc(&["dirichlet", "C", "--n", "3"]));
    assert_eq!(plain, "1 1\n2 1/2\n3 1/3\n");
    let csv = stdout(&specalc(&["dirichlet", "C", "--n", "3", "--format", "csv"]));
    assert_eq!(csv, "n,coeff\n1,1\n2,1/2\n3,1/3\n");
}

#[test]
fn cycle_index_plain_rows() {
    let out = stdout(&specalc(&["zindex", "E", "--n", "2"]));
    assert_eq!(out, "[]: 1 (monomial coeff 1)\n1^1: 1 (monomial coeff 1)\n2^1: 1 (monomial coeff 1/2)\n1^2: 1 (monomial coeff 1/2)\n");
}

#[test]
fn records_echo_the_command() {
    let out = json(&["counts", "X+X*X", "--n", "2"]);
    assert_eq!(out["command"], "counts");
    assert_eq!(out["expression"], "X + X * X");
    assert_eq!(out["order"], "2");
    assert_eq!(out["argv"][1], "X+X*X");
}

#[test]
fn out_writes_a_file() {
    let path = std::env::temp_dir().join(format!("specalc-out-{}.csv", std::process::id()));
    let o = specalc(&["counts", "E", "--n", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n,count\n0,1\n1,1\n2,1\n3,1\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn parse_errors_exit_2_with_position() {
    let o = specalc(&["counts", "aprod(C,", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 1, column 9"), "{err}");
    assert!(err.contains("expected expression"), "{err}");
    let o = specalc(&["counts", "E", "--n", "three"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn precondition_failures_exit_3() {
    for args in [
        &["counts", "comp(E, E)", "--n", "3"][..],
        &["zindex", "maprod(E, E)", "--n", "3"],
        &["types", "hct(E)", "--n", "3"],
        &["dirichlet", "E", "--n", "3"],
        &["table", "krect", "--n", "3"],
        &["table", "prect", "--k", "0", "--n", "3"],
        &["table", "pittel", "--k", "2", "--n", "3", "--tol", "0"],
    ] {
        let o = specalc(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", stderr(&o));
    }
    let err = stderr(&specalc(&["counts", "X + aprod(E, C)", "--n", "3"]));
    assert!(err.contains("/1"), "node path missing: {err}");
}

#[test]
fn scale_limits_exit_4_and_respect_the_override() {
    assert_eq!(specalc(&["counts", "E", "--n", "31"]).status.code(), Some(4));
    assert_eq!(specalc(&["zindex", "E", "--n", "11"]).status.code(), Some(4));
    assert_eq!(specalc(&["check", "E", "--n", "9"]).status.code(), Some(4));
    assert_eq!(specalc(&["enumerate", "S", "--n", "9"]).status.code(), Some(4));
    assert!(specalc_env(&["counts", "E", "--n", "31"], Some("40")).status.success());
    assert_eq!(specalc_env(&["counts", "E", "--n", "5"], Some("4")).status.code(), Some(4));
    assert_eq!(specalc_env(&["counts", "E", "--n", "5"], Some("lots")).status.code(), Some(1));
}

#[test]
fn check_reports_every_size() {
    let out = json(&["check", "X", "--n", "3"]);
    let evaluated: Vec<&str> = out["rows"].as_array().unwrap().iter().map(|r| r["evaluated"].as_str().unwrap()).collect();
    assert_eq!(evaluated, ["0", "1", "0", "0"]);
    assert!(out["rows"].as_array().unwrap().iter().all(|r| r["match"] == true));
    assert_eq!(out["status"], "ok");
    let out = json(&["check", "maprod(E,E)", "--n", "4"]);
    assert_eq!(out["rows"][2]["oracle"], "3");
}

#[test]
fn table_examples() {
    let rect = stdout(&specalc(&["table", "rect", "--n", "6"]));
    assert_eq!(rect.lines().last(), Some("6 122"));
    let mnr = json(&["table", "mnr", "--m", "2", "--n", "2"]);
    assert_eq!(mnr["rows"][2]["matrices"], "2");
    let pittel = json(&["table", "pittel", "--k", "2", "--n", "2", "--tol", "1e-6"]);
    let row = &pittel["rows"][2];
    assert_eq!(row["exact"], "3");
    let x: f64 = row["numeric"].as_str().unwrap().parse().unwrap();
    assert!((x - 3.0).abs() <= 1e-6);
    assert_eq!(row["certified"], true);
}

#[test]
fn help_succeeds() {
    assert!(specalc(&["--help"]).status.success());
    assert!(specalc(&["table", "--help"]).status.success());
}
