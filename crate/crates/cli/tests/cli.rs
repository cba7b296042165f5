use std::path::PathBuf;
use std::process::Command;

use braces::generate::{canonical_form, named_graph};
use braces_cli::format::parse_bgf;
use braces_cli::{run, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("braces").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

fn q3_form() -> String {
    canonical_form(&named_graph("q3").unwrap()).unwrap().to_hex()
}

#[test]
fn analyze_q3_json() {
    let (code, out, _) = invoke(&["analyze", "q3", "--json", "--no-timing"]);
    assert_eq!(code, EXIT_OK);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&schema("analysis_report.schema.json"), &doc);
    assert_eq!(doc["n"], 8);
    assert_eq!(doc["m"], 12);
    assert_eq!(doc["n3"], 8);
    assert_eq!(doc["brace"]["tight_cut_free"], true);
    assert_eq!(doc["brace"]["two_extendable"], true);
    assert_eq!(doc["brace"]["neighborhood"], true);
    assert_eq!(doc["face_count"], 6);
    assert_eq!(doc["euler_check"], true);
    assert_eq!(doc["edge_bound_tight"], true);
    assert_eq!(doc["thin"]["thin_count"], 12);
    assert!(doc.get("elapsed_ms").is_none());
}

#[test]
fn analyze_output_is_reproducible() {
    for args in [
        &["analyze", "heawood", "--json", "--no-timing"][..],
        &["analyze", "k4,4", "--no-timing"][..],
        &["sweep", "--max-part", "3", "--no-timing"][..],
    ] {
        assert_eq!(invoke(args), invoke(args));
    }
    let (_, timed, _) = invoke(&["analyze", "q3", "--json"]);
    let doc: Value = serde_json::from_str(&timed).unwrap();
    assert!(doc["elapsed_ms"].is_number());
    assert_valid(&schema("analysis_report.schema.json"), &doc);
}

#[test]
fn non_brace_reports_validate() {
    let validator = schema("analysis_report.schema.json");
    for name in ["path4", "c8", "k3,4", "k1,1", "k3,3"] {
        let (code, out, err) = invoke(&["analyze", name, "--json", "--no-timing"]);
        assert_eq!(code, EXIT_OK, "{name}: {err}");
        assert_valid(&validator, &serde_json::from_str(&out).unwrap());
    }
}

#[test]
fn gen_then_analyze_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q3.bgf");
    let (code, out, _) = invoke(&["gen", "q3", "--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("p bgf 4 4 12\n"));
    assert_eq!(parse_bgf(&text).unwrap(), named_graph("q3").unwrap());
    let (code, out, _) = invoke(&["analyze", path.to_str().unwrap(), "--no-timing"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("thin edges: 12 of 12"));
}

#[test]
fn gen_stdout_and_json_form() {
    let (code, out, _) = invoke(&["gen", "q3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().filter(|l| l.starts_with("e ")).count(), 12);
    let (code, out, _) = invoke(&["gen", "heawood", "--json"]);
    assert_eq!(code, EXIT_OK);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&schema("graph.schema.json"), &doc);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    std::fs::write(&path, &out).unwrap();
    let (code, out, _) = invoke(&["thin", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("21 of 21 edges thin\n"));
}

#[test]
fn sweep_planar_four() {
    let (code, out, _) = invoke(&["sweep", "--max-part", "4", "--planar-only", "--no-timing"]);
    assert_eq!(code, EXIT_OK);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&schema("census_report.schema.json"), &doc);
    assert_eq!(doc["planar_braces_six_plus"], serde_json::json!([q3_form()]));
    assert_eq!(doc["violations"], serde_json::json!([]));
}

#[test]
fn sweep_with_out_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let (code, out, _) = invoke(&[
        "sweep",
        "--max-part",
        "4",
        "--checks",
        "t1,t2,helu3",
        "--jobs",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("4+4: 5 candidates, 5 braces, 1 planar"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid(&schema("census_report.schema.json"), &doc);
    assert_eq!(doc["checks"]["t2"], true);
    assert_eq!(doc["checks"]["cor"], false);
    assert!(doc["elapsed_ms"].is_number());
}

#[test]
fn parse_error_exit_code_names_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.bgf");
    std::fs::write(&path, "c bad b index\np bgf 4 4 1\ne 0 5\n").unwrap();
    let (code, _, err) = invoke(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn resource_caps_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.bgf");
    std::fs::write(&path, "p bgf 40 40 0\n").unwrap();
    assert_eq!(invoke(&["analyze", path.to_str().unwrap()]).0, EXIT_RESOURCE);
    assert_eq!(invoke(&["sweep", "--max-part", "8"]).0, EXIT_RESOURCE);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["cuts", "q3"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["sweep", "--max-part", "3", "--checks", "t7"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["cuts", "path4", "--kind", "tight"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["thin", "c4"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["gen", "k0,3"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["--help"]).0, EXIT_OK);
}

#[test]
fn cuts_listing_and_dot() {
    let (code, out, _) = invoke(&["cuts", "k3,3", "--kind", "tight", "--nontrivial-only"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "0 cuts\n"));
    let (code, out, _) = invoke(&["cuts", "c6", "--kind", "tight", "--nontrivial-only", "--json"]);
    assert_eq!(code, EXIT_OK);
    let cuts: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert!(!cuts.is_empty());
    assert!(cuts.iter().all(|c| c["tight"] == true && c["separating"] == true && c["trivial"] == false));
    let (code, dot, _) = invoke(&["cuts", "c6", "--kind", "separating", "--dot"]);
    assert_eq!(code, EXIT_OK);
    assert!(dot.starts_with("graph \"c6\" {"));
    assert!(dot.contains("shores=\""));
}

#[test]
fn thin_single_edge_and_dot() {
    let (code, out, _) = invoke(&["thin", "k3,3", "--edge", "0", "0", "--json"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["thin"], true);
    let (code, dot, _) = invoke(&["analyze", "q3", "--dot"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(dot.matches("thin=true").count(), 12);
}

#[test]
fn binary_runs() {
    let output = Command::new(env!("CARGO_BIN_EXE_braces"))
        .args(["analyze", "q3.bgf", "--json", "--no-timing"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_OK));
    let doc: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["canonical_form"], q3_form());
    let status = Command::new(env!("CARGO_BIN_EXE_braces")).arg("bogus").output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_USAGE));
}
