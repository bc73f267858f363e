use std::process::Command;

use decmin_cli::{run, Outcome};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn call(args: &[&str]) -> Outcome {
    let mut argv = vec!["decmin".to_string()];
    for a in args {
        // Arguments naming fixtures are resolved against the fixture directory.
        if a.contains('.') && !a.starts_with('-') && !a.contains(',') {
            argv.push(fixture(a));
        } else {
            argv.push(a.to_string());
        }
    }
    run(argv)
}

fn ok_json(args: &[&str]) -> Value {
    let out = call(args);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn decmin_on_two_element_table() {
    let v = ok_json(&["decmin", "--table", "i1.json", "--verify"]);
    let mut m: Vec<i64> = serde_json::from_value(v["m"].clone()).unwrap();
    m.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(m, vec![1, 0]);
    assert_eq!(v["betas"], serde_json::json!([1]));
    let basic = ok_json(&["decmin", "--table", "i1.json", "--method", "basic", "--verify"]);
    assert_eq!(basic["betas"], serde_json::json!([1]));
}

#[test]
fn certify_prints_square_sum_and_zero_gap() {
    let out = call(&["certify", "--table", "r62.json", "--m", "2,3,3,1", "--verify"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "{\"W\":23,\"gap\":0,\"pi_star\":[3,5,5,1]}\n");
    let worse = ok_json(&["certify", "--table", "r62.json", "--m", "3,2,4,0", "--verify"]);
    assert_eq!(worse["W"], 29);
    assert!(worse["gap"].as_i64().unwrap() > 0);
}

#[test]
fn canonical_and_verify_subcommands() {
    let v = ok_json(&["canonical", "--table", "r62.json", "--verify"]);
    assert_eq!(v["betas"], serde_json::json!([3, 2, 1]));
    let v = ok_json(&["verify", "--table", "r62.json", "--m", "3,3,3,0"]);
    assert_eq!((v["member"].as_bool(), v["decmin"].as_bool()), (Some(true), Some(false)));
    let v = ok_json(&["verify", "--seed", "11", "--count", "40"]);
    assert_eq!(v["mismatches"], 0);
}

#[test]
fn orientations() {
    let v = ok_json(&["orient", "--graph", "c4.g", "--verify"]);
    assert_eq!(v["indeg"], serde_json::json!([1, 1, 1, 1]));
    let v = ok_json(&["orient", "--graph", "ell5.g", "--capacitated", "--verify"]);
    let mut d: Vec<i64> = serde_json::from_value(v["indeg"].clone()).unwrap();
    d.sort_unstable();
    assert_eq!(d, vec![2, 3]);
    ok_json(&["orient", "--graph", "triangle.g", "--k", "1", "--verify"]);
    ok_json(&["orient", "--graph", "triangle.g", "--t", "0", "--verify"]);
    ok_json(&["orient", "--graph", "c4.g", "--cheapest", "--verify"]);
    ok_json(&["orient", "--graph", "triangle.g", "--inout"]);
}

#[test]
fn applications() {
    let v = ok_json(&["semimatch", "--instance", "two_users.json", "--verify"]);
    let mut d: Vec<i64> = serde_json::from_value(v["degrees"].clone()).unwrap();
    d.sort_unstable();
    assert_eq!(d, vec![0, 1]);
    let v = ok_json(&["matroid-sum", "--matroids", "matroids.json", "--verify"]);
    assert_eq!(v["sum"], serde_json::json!([1, 1, 1, 1]));
    let v = ok_json(&["megiddo", "--instance", "megiddo.txt", "--verify"]);
    assert_eq!(v["out_flow"], serde_json::json!([1, 1]));
    ok_json(&["rootvec", "--graph", "triangle.g", "--verify"]);
}

#[test]
fn infeasible_instances_exit_two_with_witness() {
    for args in [
        vec!["orient", "--graph", "c4.g", "--bounds", "infeasible.b"],
        vec!["rootvec", "--graph", "two_isolated.g"],
        vec!["decmin", "--table", "i1.json", "--lower", "1,1"],
    ] {
        let out = call(&args);
        assert_eq!(out.code, 2, "{args:?}");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(!v["witness"].as_array().unwrap().is_empty(), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(call(&["bogus"]).code, 1);
    assert_eq!(call(&["decmin", "--table", "missing.json"]).code, 1);
    assert_eq!(call(&["certify", "--table", "r62.json", "--m", "9,9,9,9"]).code, 1);
    assert_eq!(call(&["verify"]).code, 1);
}

#[test]
fn text_format() {
    let out = call(&["certify", "--table", "r62.json", "--format", "text"]);
    assert_eq!(out.stdout, "W: 23\ngap: 0\npi_star: 3 5 5 1\n");
}

#[test]
fn binary_output_is_byte_stable() {
    let exe = env!("CARGO_BIN_EXE_decmin");
    let args = ["canonical", "--table", &fixture("r62.json")];
    let first = Command::new(exe).args(args).output().unwrap();
    let second = Command::new(exe).args(args).output().unwrap();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let bad = Command::new(exe).args(["orient", "--graph", &fixture("c4.g"), "--bounds", &fixture("infeasible.b")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
