use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn mcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcat")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mcat(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).expect("valid json")
}

#[test]
fn linearize_at_two() {
    let v = json(&["linearize", "--builtin", "symmetric", "--max-len", "2"]);
    assert_eq!(v["generators"].as_array().unwrap().len(), 1);
    assert_eq!(v["relations"].as_array().unwrap().len(), 1);
    assert_eq!(v["relations"][0]["source"], "involution");
}

#[test]
fn linearize_needs_a_bound() {
    assert_eq!(mcat(&["linearize", "--builtin", "symmetric"]).status.code(), Some(2));
}

#[test]
fn end_algebra_counts() {
    let sym = json(&["end-alg", "--builtin", "symmetric", "--object", "a a a"]);
    assert_eq!(sym["generators"].as_array().unwrap().len(), 2);
    assert_eq!(sym["relations"].as_array().unwrap().len(), 3);
    let braid = json(&["end-alg", "--builtin", "braid", "--object", "a a"]);
    assert_eq!(braid["generators"].as_array().unwrap().len(), 2);
    assert_eq!(braid["relations"].as_array().unwrap().len(), 2);
}

#[test]
fn non_endomorphism_edges_are_rejected() {
    let path = std::env::temp_dir().join(format!("mcat-nonendo-{}.txt", std::process::id()));
    writeln!(std::fs::File::create(&path).unwrap(), "object a\nobject b\nmorphism f : a -> b").unwrap();
    let out = mcat(&["end-alg", "--file", path.to_str().unwrap(), "--object", "a"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an endomorphism"));
}

#[test]
fn dimensions() {
    for (name, power, want) in [("symmetric", "a:4", "24"), ("hecke", "a:3", "6"), ("wreath", "a:2", "8")] {
        let v = json(&["dim", "--builtin", name, "--object-power", power]);
        assert_eq!(v["finite"], true, "{name}");
        assert_eq!(v["dimension"], want, "{name}");
    }
}

#[test]
fn normal_forms() {
    let nf = |e: &str| stdout(&["nf", "--builtin", "symmetric", "--expr", e]).trim().to_string();
    assert_eq!(nf("s a a ; a a s"), "(- | s | a a) ; (a a | s | -)");
    assert_eq!(nf("a a s ; s a a"), "(- | s | a a) ; (a a | s | -)");
    assert_eq!(nf("a a"), "1_{a a}");
    assert_eq!(nf("s ; s - s ; s"), "0");
}

#[test]
fn check_reports_json_and_is_deterministic() {
    let args = ["check", "--suite", "core", "--format", "json"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let v: Value = serde_json::from_str(&first).unwrap();
    let text = v.to_string();
    assert!(text.contains("symmetric d=4"));
    assert!(!text.contains("\"passed\":false"));
}

#[test]
fn sequential_flag_gives_identical_output() {
    let args = ["dim", "--builtin", "wreath", "--object-power", "a:3", "--format", "json"];
    let mut seq = vec!["--sequential"];
    seq.extend(args);
    assert_eq!(stdout(&args), stdout(&seq));
}

#[test]
fn examples_are_listed() {
    let list = stdout(&["examples", "list"]);
    for name in ["symmetric", "braid", "hecke", "daha", "wreath", "affine-wreath"] {
        assert!(list.lines().any(|l| l.trim() == name), "{name}");
    }
}
