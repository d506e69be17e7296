use std::process::{Command, Output};

use plderham::simplicial::{text, Generator};
use serde_json::Value;

fn plderham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plderham")).args(args).output().expect("binary runs")
}

fn structured(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = plderham(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn torus_cohomology() {
    let v = structured(&["cohomology", "--generate", "torus"]);
    assert_eq!(v["cochain_betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["form_betti"], serde_json::json!([1, 2, 1]));
}

#[test]
fn bump_on_the_plane_is_supported_on_the_hexagon() {
    let v = structured(&["bump", "--generate", "plane:2", "--l", "0:p0,0"]);
    assert_eq!(v["verified"], Value::Bool(true));
    let triangles: Vec<&str> =
        v["support"].as_array().unwrap().iter().filter_map(Value::as_str).filter(|s| s.starts_with("2:")).collect();
    assert_eq!(triangles.len(), 6);
    assert!(v["form"].as_str().unwrap().contains("0 p0,0 : 1\n"));
}

#[test]
fn validate_names_the_broken_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "0 a :\n0 b :\n0 c :\n1 x : b a\n1 y : c b\n1 z : c b\n2 t : y z x\n").unwrap();
    let out = plderham(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 7") && err.contains("on t: d_1 d_2 != d_1 d_1"), "{err}");
}

#[test]
fn generate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["torus", "torus-grid:3,3", "plane:2", "boundary:3", "real-line:3"] {
        let path = dir.path().join("x.txt");
        let out = plderham(&["generate", spec, "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
        let reloaded = text::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(reloaded, Generator::parse(spec).unwrap().build().unwrap(), "{spec}");
        let check = plderham(&["validate", "--input", path.to_str().unwrap()]);
        assert!(check.status.success());
    }
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["derham-check", "--generate", "torus", "--format", "structured"],
        vec!["mv-check", "--variant", "v1", "--instance", "circle-arcs"],
        vec!["cohomology-compact", "--tower", "real-line", "--exhaustion", "3"],
    ] {
        let a = plderham(&args);
        let b = plderham(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn strict_fails_on_negative_verdicts() {
    let args = ["cohomology-compact", "--tower", "real-line", "--exhaustion", "1"];
    assert!(plderham(&args).status.success());
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(plderham(&strict).status.code(), Some(2));
}

#[test]
fn hypothesis_violations_are_named() {
    let out = plderham(&["mv-check", "--variant", "v1", "--generate", "circle:6", "--u", "1:e0", "--v", "1:e1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("U and V must cover X"));
}

#[test]
fn mv_instances_are_exact() {
    for (variant, instance) in [("v1", "circle-arcs"), ("v2", "circle"), ("v2", "disjoint"), ("v2", "half-lines")] {
        let out = plderham(&["mv-check", "--variant", variant, "--instance", instance, "--strict"]);
        assert!(out.status.success(), "{instance}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn out_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = plderham(&["derham-check", "--generate", "circle:4", "--format", "structured", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["isomorphism"], Value::Bool(true));
}
