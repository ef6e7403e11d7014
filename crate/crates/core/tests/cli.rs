use std::process::Command;

use fibdir::cli::{run, EXIT_COMPUTE, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAIL};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fibdir").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = call(args);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn zeck_encode_and_decode() {
    let (code, v) = json(&["zeck", "encode", "100"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"][0]["word"], "1000010100");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["precision_bits"], "128");
    let (_, v) = json(&["zeck", "decode", "1000010100"]);
    assert_eq!(v["results"][0]["n"], "100");
    let (code, v) = json(&["zeck", "decode", "0110"]);
    assert_eq!(code, EXIT_COMPUTE);
    assert_eq!(v["error"]["kind"], "invalid_word");
}

#[test]
fn seq_csv_has_header() {
    let (code, out, _) = call(&["seq", "d", "--from", "1", "--to", "5", "--output", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "n,d\n1,0\n2,1\n3,2\n4,0\n5,1\n");
}

#[test]
fn delta_exact_and_float() {
    let (_, v) = json(&["delta", "4", "--float"]);
    let r = &v["results"][0];
    assert_eq!(r["delta"], "1 + 2β");
    assert!(r["delta_float"]
        .as_str()
        .unwrap()
        .starts_with("4.236067977499789696409173668731"));
    assert!(r["error_bound"].is_string());
}

#[test]
fn series_residue_at_one() {
    let (code, v) = json(&["series", "residue", "F", "--at", "1"]);
    assert_eq!(code, EXIT_OK);
    let re: f64 = v["results"][0]["re"].as_str().unwrap().parse().unwrap();
    assert!((re - 1.0).abs() < 1e-2);
}

#[test]
fn series_eval_carries_bounds() {
    let (code, v) = json(&["series", "eval", "G", "--re", "0.5", "--im", "2"]);
    assert_eq!(code, EXIT_OK);
    let r = &v["results"][0];
    for key in ["re", "im", "error_bound", "terms_used", "method"] {
        assert!(r[key].is_string(), "{key}");
    }
    let bound: f64 = r["error_bound"].as_str().unwrap().parse().unwrap();
    assert!(bound < 1e-6);
    let (code, _, err) = call(&["series", "eval", "K", "--re", "1.5"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn pole_refusal_is_a_computation_error() {
    let (code, v) = json(&["series", "eval", "F", "--re", "1"]);
    assert_eq!(code, EXIT_COMPUTE);
    assert_eq!(v["error"]["kind"], "pole_proximity");
}

#[test]
fn poles_listing() {
    let (code, v) = json(&["poles", "--k-min", "-1", "--k-max", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"].as_array().unwrap().len(), 9);
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["verify", "--suite", "nope"]).0, EXIT_USAGE);
    assert_eq!(call(&["seq", "q", "--to", "3"]).0, EXIT_USAGE);
    assert_eq!(call(&["seq", "d", "--from", "5", "--to", "3"]).0, EXIT_USAGE);
    assert_eq!(call(&["--precision", "8", "zeck", "encode", "3"]).0, EXIT_USAGE);
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn verify_exit_codes() {
    let (code, v) = json(&["verify", "--suite", "sets", "--n-max", "1000"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["report"]["suite"], "sets");
    // The closed forms as stated fail; the corrected ones pass.
    let (code, out, _) = call(&[
        "verify",
        "--suite",
        "telescoping",
        "--n-max",
        "20000",
        "--output",
        "text",
    ]);
    assert_eq!(code, EXIT_VERIFY_FAIL, "{out}");
    assert!(out.contains("r_sum_corrected              pass"));
}

#[test]
fn output_is_reproducible() {
    let args = ["series", "eval", "H", "--re", "2.5", "--im", "1", "--threads", "1"];
    assert_eq!(call(&args).1, call(&args).1);
}

#[test]
fn binary_reads_precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fibdir"))
        .args(["zeck", "encode", "7"])
        .env("FIBDIR_PRECISION_BITS", "256")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["precision_bits"], "256");
    let out = Command::new(env!("CARGO_BIN_EXE_fibdir"))
        .args(["zeck"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
