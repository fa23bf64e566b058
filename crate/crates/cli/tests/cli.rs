use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dilate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dilate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = dilate(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).display().to_string();
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &path]);
    json_ok(&all);
    path
}

#[test]
fn classify_sqrt2_pair() {
    let v = json_ok(&["classify", "--l1", "1,0;0,1", "--l2", "0,2;1,0"]);
    assert_eq!(v["coprime"], true);
    assert_eq!(v["irreducible"], true);
    let lo: f64 = v["bound"][0].as_str().unwrap().parse().unwrap();
    let hi: f64 = v["bound"][1].as_str().unwrap().parse().unwrap();
    assert!(lo <= 5.8285 && hi >= 5.8284, "{lo} {hi}");
    for key in ["d", "p", "q", "char_poly", "c_prime", "h", "certificates"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn classify_rotation_pair_is_reducible() {
    let v = json_ok(&["classify", "--l1", "0,-1;1,0", "--l2", "0,-1;1,0"]);
    assert_eq!(v["irreducible"], false);
    assert_eq!(v["h"], Value::Null);
}

#[test]
fn skew_box_sumset() {
    let dir = tempfile::tempdir().unwrap();
    let pts = generate(dir.path(), "skewbox3.pts", &["skew", "--n", "3"]);
    let v = json_ok(&["sumset", "--l1", "2,0;0,1", "--l2", "0,-1;2,0", "--points", &pts]);
    assert_eq!(v["n"], 9);
    assert_eq!(v["sumset"], 25);
}

#[test]
fn generated_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "kp.pts", &["kp", "--m", "4", "--n", "3"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let set = dilate::PointSet::parse(&text).unwrap();
    assert_eq!(set, dilate::constructions::kp_box(4, 3).unwrap());
    assert_eq!(set.to_file_string(), text);
}

#[test]
fn sumset_out_file_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let pts = generate(dir.path(), "rot.pts", &["rot-line", "--n", "5"]);
    let out = dir.path().join("sum.pts");
    let v = json_ok(&["sumset", "--l1", "0,-1;1,0", "--l2", "0,-1;1,0", "--points", &pts, "--out", out.to_str().unwrap()]);
    let written = dilate::PointSet::parse(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["sumset"], written.len());
    assert_eq!(written.len(), 9);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: [&[&str]; 3] = [
        &["classify", "--l1", "1,0;0,1", "--l2", "0,2;1,0"],
        &["minimize", "--l1", "0,-1;1,0", "--l2", "1,0;0,1", "-n", "4", "--box", "0:3,0:3", "--strategy", "random:200:11", "--json"],
        &["constants", "--d", "2", "--k", "2", "--sigma1", "0.1", "--D", "1", "--alpha0", "0.5", "--D1", "1", "--target-eps", "0.01"],
    ];
    for args in cases {
        let a = dilate(args);
        let b = dilate(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn minimize_csv_rows() {
    let out = dilate(&["minimize", "--l1", "1", "--l2", "2", "-n", "2:4", "--box", "0:12", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,minimum,ratio\n2,4,2\n3,7,7/3\n4,10,5/2\n");
}

#[test]
fn constants_trace_ends_with_summary() {
    let out = dilate(&["constants", "--d", "2", "--k", "2", "--sigma1", "0.1", "--D", "1", "--alpha0", "0.5", "--D1", "1", "--target-eps", "0.1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[1]["alpha"], 0.375);
    let sigma2 = lines[7]["final"]["sigma2"].as_f64().unwrap();
    assert!((sigma2 - 0.0089373).abs() < 1e-6);
}

#[test]
fn domain_errors_exit_one_with_json() {
    let out = dilate(&["companion", "--poly=-1,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"]["code"].is_string());
    assert!(v["error"]["message"].is_string());
    assert!(v["error"].get("witness").is_some());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["classify", "--l1", "1,0", "--l2", "1"][..],
        &["classify", "--l1", "x"],
        &["minimize", "--l1", "1", "--l2", "2", "-n", "3", "--box", "0:5", "--strategy", "random"],
        &["frobnicate"],
    ] {
        assert_eq!(dilate(args).status.code(), Some(2), "{args:?}");
    }
}
