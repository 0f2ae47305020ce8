mod common;

use std::path::Path;

use common::{instance, run, run_json};
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema(name: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&value).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(name: &str, doc: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name} schema rejects output: {msgs:#?}\n{doc:#}");
}

#[test]
fn widths_report_matches_schema() {
    let f = instance("all-pairs", &["--m", "4"]);
    assert_valid("widths", &run_json(&["widths", &f]));
    assert_valid("widths", &run_json(&["widths", &f, "--max-d", "2"]));
    let g = instance("symmetric-two-level", &["--m", "4"]);
    assert_valid("widths", &run_json(&["widths", &g]));
}

#[test]
fn maximize_reports_match_schema() {
    let f = instance("pair-matching", &["--t", "3"]);
    assert_valid(
        "maximize-constrained",
        &run_json(&["maximize", "constrained", &f, "--k", "4", "--d", "1", "--brute-force"]),
    );
    assert_valid(
        "maximize-constrained",
        &run_json(&["maximize", "constrained", &f, "--k", "2", "--auto-width"]),
    );
    let w = instance("hard-wm", &["--d", "1", "--n", "2"]);
    assert_valid(
        "maximize-welfare",
        &run_json(&["maximize", "welfare", &w, "--d", "1", "--brute-force"]),
    );
}

#[test]
fn every_instance_matches_the_function_file_schema() {
    let cases: &[(&str, &[&str])] = &[
        ("threshold-any-two", &["--m", "5"]),
        ("pair-matching", &["--t", "2"]),
        ("symmetric-two-level", &["--m", "5"]),
        ("all-pairs", &["--m", "4"]),
        ("additive", &["--values", "1,2,3"]),
        ("random", &["--m", "5", "--style", "coverage"]),
        ("hard-cm", &["--m", "32", "--d", "1"]),
        ("hard-wm", &["--d", "1", "--n", "3"]),
        ("projective-plane", &["--q", "2"]),
        ("single-bid-pos", &["--d", "2"]),
    ];
    for (name, args) in cases {
        let mut argv = vec!["instance", name];
        argv.extend_from_slice(args);
        let doc = run_json(&argv);
        assert_valid("function-file", &doc);
        // and the written form loads back
        let path = instance(name, args);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(widthlab::format::load::<f64>(&text).is_ok(), "{name}");
    }
    let path = common::scratch("written.json");
    let doc = run_json(&["instance", "all-pairs", "--m", "3", "-o", &path]);
    assert_valid("instance-written", &doc);
}

#[test]
fn approx_certificate_matches_schema() {
    let f = instance("pair-matching", &["--t", "3"]);
    assert_valid("approx", &run_json(&["approx", &f, "--mode", "smw", "--d", "1"]));
    assert_valid("approx", &run_json(&["approx", &f, "--mode", "saw", "--target-set", "0x3f"]));
}

#[test]
fn auction_reports_match_schema() {
    let pos = instance("single-bid-pos", &["--d", "2"]);
    let doc = run_json(&[
        "auction", "single-bid", "--valuations", &pos, "--grid", "0.1", "--rounds", "500", "--enumerate-nash",
    ]);
    assert_valid("auction", &doc);
    let plane = instance("projective-plane", &["--q", "2"]);
    let doc = run_json(&["auction", "sia", "--valuations", &plane, "--rounds", "0", "--grid", "0.5"]);
    assert_valid("auction", &doc);
}

#[test]
fn reproduce_and_error_reports_match_schema() {
    let (_, out, _) = run(&["reproduce", "--suite", "propositions"]);
    assert_valid("reproduce", &serde_json::from_str(&out).unwrap());
    let (_, _, err) = run(&["widths", "/no/such/file.json"]);
    assert_valid("error", &serde_json::from_str(err.trim()).unwrap());
}
