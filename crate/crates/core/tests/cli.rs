use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fszlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fszlab")).args(args).output().expect("spawn fszlab")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    let mut v: Value = serde_json::from_slice(&o.stdout).expect("json output");
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&fszlab(&["--help"])), 0);
    assert_eq!(code(&fszlab(&[])), 2);
    assert_eq!(code(&fszlab(&["bogus"])), 2);
    assert_eq!(code(&fszlab(&["fsz"])), 2);
    assert_eq!(code(&fszlab(&["fsz", "--family", "foo", "3"])), 2);
    assert_eq!(code(&fszlab(&["fsz", "--family", "cyclic", "4", "--workers", "0"])), 2);
    assert_eq!(code(&fszlab(&["fsz", "--family", "cyclic", "4", "--degrees", "2,x"])), 2);
    assert_eq!(code(&fszlab(&["fsz-plus", "--family", "cyclic", "4", "--degrees", "2"])), 2);
    let missing = fszlab(&["fsz", "--file", "/nonexistent/group.pc"]);
    assert_eq!(code(&missing), 2);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/group.pc"));
}

#[test]
fn text_verdicts() {
    let o = fszlab(&["fsz", "--family", "symmetric", "5", "--no-reductions"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("order 120"));
    assert!(out.contains("n = 5: pass"));
    assert!(out.contains("FSZ: pass"));

    let o = fszlab(&["fsz-plus", "--family", "heisenberg", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["passed"], Value::Bool(true));
}

#[test]
fn json_is_deterministic_across_runs_and_workers() {
    let args = ["fsz-plus", "--family", "wreath", "cyclic", "3", "3", "--no-reductions", "--format", "json"];
    let a = json(&fszlab(&args));
    let b = json(&fszlab(&args));
    assert_eq!(a, b);
    let mut par = args.to_vec();
    par.extend(["--workers", "4"]);
    assert_eq!(a, json(&fszlab(&par)));
    assert_eq!(a["group"]["order"], 81);
    assert_eq!(a["verdicts"]["3"], "pass");
}

#[test]
fn counterexample_exit_code_and_witnesses() {
    let file = data("twisted_wreath_5.pc");
    let file = file.to_str().unwrap();
    let o = fszlab(&["fsz", "--file", file, "--format", "json", "--workers", "2"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert_eq!(v["verdicts"]["5"], "fail");
    let w = v["witnesses"].as_array().unwrap();
    assert!(!w.is_empty());
    for x in w {
        assert_eq!(x["n"], 5);
        assert_ne!(x["count_g"], x["count_gm"]);
    }

    let o = fszlab(&["fsz", "--file", file, "--format", "json", "--fail-fast"]);
    assert_eq!(code(&o), 1);
    let ff = json(&o);
    assert!(!ff["witnesses"].as_array().unwrap().is_empty());
    assert!(ff["witnesses"].as_array().unwrap().len() <= w.len());
    assert_eq!(ff["witnesses"][0], w[0]);

    let o = fszlab(&["fsz", "--file", file, "--format", "csv"]);
    assert_eq!(code(&o), 1);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap().get(0), Some("n"));
    assert_eq!(r.records().count(), w.len());
}

#[test]
fn zeta_csv_rows() {
    let o = fszlab(&["zeta", "--family", "symmetric", "3", "--degrees", "2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let headers: Vec<String> = r.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(headers, ["n", "u_class", "u", "g", "count"]);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    // centralizer orders 6 + 2 + 3
    assert_eq!(rows.len(), 11);
    // identity class: squares of S_3, identity hit by e and the three transpositions
    let e_row = rows.iter().find(|r| &r[1] == "0" && &r[3] == "0").unwrap();
    assert_eq!(&e_row[4], "4");
}

#[test]
fn indicators_text_and_restrictions() {
    let o = fszlab(&["indicators", "--family", "cyclic", "5", "--degrees", "5"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("nu_5(")).count(), 25);
    assert!(!out.contains("NON-INTEGER"));

    let o = fszlab(&[
        "indicators",
        "--family",
        "symmetric",
        "3",
        "--degrees",
        "2,3",
        "--cyclic-restrictions",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rows = v["indicators"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["kind"] == "cyclic-restriction"));
    assert!(rows.iter().all(|r| r["class"] == "integer" || r["class"] == "rational-non-integer"));
}

#[test]
fn file_round_trip_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let group = dir.path().join("s3.perm");
    std::fs::write(&group, "perm 3\n2 3 1\n2 1 3\n").unwrap();
    let out = dir.path().join("report.json");
    let o = fszlab(&[
        "fsz",
        "--file",
        group.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
        "--no-reductions",
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    assert_eq!(v["group"]["name"], "s3");
    assert_eq!(v["group"]["order"], 6);
    assert_eq!(v["degrees"], serde_json::json!([1, 2, 3, 6]));

    std::fs::write(&group, "perm 3\n2 3 1\n2 2 3\n").unwrap();
    let o = fszlab(&["fsz", "--file", group.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    std::fs::write(&group, "perm 3\n2 3 1\n2 x 3\n").unwrap();
    let o = fszlab(&["fsz", "--file", group.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn catalog_and_properties() {
    let o = fszlab(&["catalog", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rows = v["catalog"].as_array().unwrap();
    assert!(rows.len() > 50);
    assert!(rows.iter().all(|r| r["fsz"] == true && r["fsz_plus"] == true));

    let o = fszlab(&["verify-properties", "--samples", "60", "--seed", "9", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let props = v["properties"].as_array().unwrap();
    assert_eq!(props.len(), 8);
    for p in props {
        assert_eq!(p["instances"], 60, "{}", p["name"]);
        assert_eq!(p["failures"], 0);
    }
    assert_eq!(v, json(&fszlab(&["verify-properties", "--samples", "60", "--seed", "9", "--format", "json"])));
}
