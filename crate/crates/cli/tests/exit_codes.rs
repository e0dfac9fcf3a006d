use std::process::Command;

use serde_json::Value;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");

fn run(args: &[&str]) -> (i32, Value) {
    let args: Vec<String> = args.iter().map(|a| a.replace("FIX", FIXTURES)).collect();
    let out = Command::new(env!("CARGO_BIN_EXE_qlogic")).args(&args).output().unwrap();
    let code = out.status.code().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

#[test]
fn classify_always_succeeds() {
    for src in ["l12", "n5", "o6", "powerset:3", "mo:2", "FIX/l12.lat", "FIX/n5.lat"] {
        let (code, v) = run(&["classify", src]);
        assert_eq!(code, 0, "{src}");
        assert_eq!(v["schema"], 1);
    }
    let (_, v) = run(&["classify", "l12"]);
    assert_eq!(v["orthomodular"], true);
    assert_eq!(v["distributive"], false);
    let (_, v) = run(&["classify", "powerset:3", "--dot"]);
    assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
}

#[test]
fn check_exit_codes() {
    assert_eq!(run(&["check", "l12", "FIX/l12_quarter.val"]).0, 0);
    let (code, v) = run(&["check", "FIX/l12.lat", "FIX/l12_half.val"]);
    assert_eq!(code, 1);
    assert!(!v["violations"].as_array().unwrap().is_empty());
    assert_eq!(run(&["check", "l12", "FIX/wrong_lattice.val"]).0, 2);
    assert_eq!(run(&["check", "l12", "FIX/missing.val"]).0, 2);
}

#[test]
fn states_exit_codes() {
    let (code, v) = run(&["states", "l12", "find"]);
    assert_eq!(code, 0);
    assert_eq!(v["state"]["1"], "1");
    assert_eq!(run(&["states", "o6", "find"]).0, 2);
    assert_eq!(run(&["states", "n5", "find"]).0, 2);
    let (code, v) = run(&["states", "mo:3", "extremes", "--cap", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["complete"], false);
    let (code, v) = run(&["states", "powerset:3", "extremes", "--float"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 3);
    let (code, v) = run(&["states", "powerset:2", "relations"]);
    assert_eq!(code, 0);
    assert_eq!(v["relations"].as_array().unwrap().len(), 1);
}

#[test]
fn hilbert_exit_codes() {
    let (code, v) = run(&["hilbert", "FIX/d2_zero_plus.json", "--rho", "pure:(0,1)", "--scan", "subadd"]);
    assert_eq!(code, 0);
    assert_eq!(v["elements"], 6);
    assert_eq!(v["state_check"]["pass"], true);
    assert_eq!(run(&["hilbert", "FIX/d3_tilted.json", "--rho", "FIX/rho_one.json"]).0, 2);
    assert_eq!(run(&["hilbert", "FIX/d2_zero_plus.json", "--rho", "FIX/rho_one.json"]).0, 0);
    assert_eq!(run(&["hilbert", "FIX/d3_tilted.json", "--cap", "4"]).0, 1);
    assert_eq!(run(&["hilbert", "FIX/l12.lat"]).0, 2);
    assert_eq!(run(&["hilbert", "FIX/d3_axes.json", "--rho", "maxmixed", "--scan", "ie"]).0, 0);
}

#[test]
fn cox_exit_codes() {
    assert_eq!(run(&["cox", "one-minus", "involution", "--tolerance", "1e-12"]).0, 0);
    assert_eq!(run(&["cox", "square", "involution"]).0, 1);
    assert_eq!(run(&["cox", "sum", "involution"]).0, 2);
    assert_eq!(run(&["cox", "sumprod", "assoc"]).0, 0);
    assert_eq!(run(&["cox", "max", "regraduate"]).0, 1);
    let (code, v) = run(&["cox", "sumprod", "regraduate"]);
    assert_eq!(code, 0);
    assert!(v["w"].as_array().unwrap().len() > 2);
    assert_eq!(run(&["cox", "FIX/product.csv", "assoc"]).0, 0);
    assert_eq!(run(&["cox", "nonsense", "assoc"]).0, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["states", "l12", "sideways"]).0, 2);
    assert_eq!(run(&["classify", "powerset:x"]).0, 2);
}
