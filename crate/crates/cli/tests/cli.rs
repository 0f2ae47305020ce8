mod common;

use common::{instance, run, run_bin, run_json, scratch};

#[test]
fn threshold_widths() {
    let f = instance("threshold-any-two", &["--m", "6"]);
    let r = run_json(&["widths", &f]);
    assert_eq!((r["sd"].as_u64(), r["smw"].as_u64(), r["saw"].as_u64()), (Some(5), Some(1), Some(1)));
}

#[test]
fn all_pairs_round_trip_through_a_file() {
    let f = instance("all-pairs", &["--m", "4"]);
    let r = run_json(&["widths", &f]);
    assert_eq!(r["smw"], 3);
    assert_eq!(r["saw"], 3);
    assert_eq!(r["ph_level"], 2);
}

#[test]
fn two_level_is_not_ph() {
    let f = instance("symmetric-two-level", &["--m", "4"]);
    assert_eq!(run_json(&["widths", &f])["ph_level"], "not-ph");
}

#[test]
fn constrained_examples() {
    let th = instance("threshold-any-two", &["--m", "6"]);
    let r = run_json(&["maximize", "constrained", &th, "--k", "2", "--d", "1", "--brute-force"]);
    assert_eq!(r["value"], 1.0);
    assert_eq!(r["ratio"], 1.0);
    assert!(r["queries"].as_u64().unwrap() <= r["query_budget"].as_u64().unwrap());

    let pm = instance("pair-matching", &["--t", "3"]);
    let r = run_json(&["maximize", "constrained", &pm, "--k", "4", "--auto-width", "--brute-force"]);
    assert_eq!(r["optimum"], 2.0);
}

#[test]
fn hard_cm_gap_through_the_cli() {
    let h = instance("hard-cm", &["--m", "12", "--d", "1", "--c1", "1", "--c2", "2"]);
    let r = run_json(&["maximize", "constrained", &h, "--k", "6", "--d", "1", "--brute-force"]);
    assert_eq!(r["value"], 3.0);
    assert_eq!(r["optimum"], 5.0);
}

#[test]
fn welfare_over_several_files() {
    let a = scratch("agent_a.json");
    let b = scratch("agent_b.json");
    std::fs::write(&a, r#"{"kind":"hypergraph","m":2,"edges":[{"set":[0],"w":3}]}"#).unwrap();
    std::fs::write(&b, r#"{"kind":"hypergraph","m":2,"edges":[{"set":[1],"w":3}]}"#).unwrap();
    let r = run_json(&["maximize", "welfare", &a, &b, "--d", "0", "--brute-force"]);
    assert_eq!(r["value"], 6.0);
    assert_eq!(r["allocation"], serde_json::json!([1, 2]));
}

#[test]
fn exit_codes() {
    // invalid arguments
    assert_eq!(run(&["widths"]).0, 2);
    assert_eq!(run(&["nonsense"]).0, 2);
    assert_eq!(run(&["widths", "/no/such/file.json"]).0, 2);
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"kind":"explicit","m":2,"table":[0,1]}"#).unwrap();
    let (code, _, err) = run(&["widths", &bad]);
    assert_eq!(code, 2);
    let e: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(e["kind"], "format");
    let th = instance("threshold-any-two", &["--m", "4"]);
    assert_eq!(run(&["maximize", "constrained", &th, "--k", "9", "--d", "1"]).0, 2);
    assert_eq!(run(&["maximize", "constrained", &th, "--k", "2"]).0, 2);

    // resource limits
    let big = instance("threshold-any-two", &["--m", "13"]);
    let (code, _, err) = run(&["widths", &big]);
    assert_eq!(code, 3);
    assert!(err.contains("resource-limit"));
    let h = instance("hard-cm", &["--m", "32", "--d", "1"]);
    assert_eq!(run(&["maximize", "constrained", &h, "--k", "8", "--d", "1", "--brute-force"]).0, 3);

    // help is a success
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn failing_suite_exits_nonzero_with_a_report() {
    let (code, out, _) = run(&["reproduce", "--suite", "approximation"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["reproduce", "--suite", "propositions", "--format", "text"]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.starts_with("FAIL criterion 3")));
}

#[test]
fn csv_and_text_outputs() {
    let f = instance("all-pairs", &["--m", "3"]);
    let (code, out, _) = run(&["widths", &f, "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("instance,metric,value\n"));
    assert!(out.lines().any(|l| l.ends_with(",smw,2")));
    let (_, out, _) = run(&["widths", &f, "--report", "text"]);
    assert!(out.lines().any(|l| l.ends_with("saw = 2")));
}

#[test]
fn binary_output_is_byte_identical() {
    let f = instance("pair-matching", &["--t", "3"]);
    let pos = instance("single-bid-pos", &["--d", "2"]);
    let invocations: Vec<Vec<&str>> = vec![
        vec!["widths", &f],
        vec!["maximize", "constrained", &f, "--k", "3", "--d", "1"],
        vec!["approx", &f, "--mode", "saw"],
        vec!["auction", "single-bid", "--valuations", &pos, "--rounds", "3000", "--seed", "9"],
        vec!["instance", "random", "--m", "6"],
    ];
    for args in invocations {
        let (c1, a, e1) = run_bin(&args);
        let (c2, b, _) = run_bin(&args);
        assert_eq!((c1, c2), (0, 0), "{args:?}: {e1}");
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn seed_sources() {
    let a = run_json(&["instance", "random", "--m", "5", "--seed", "1"]);
    let b = run_json(&["instance", "random", "--m", "5", "--seed", "2"]);
    assert_ne!(a, b);
    let with_env = |args: &[&str], key: &str, val: &str| {
        std::process::Command::new(env!("CARGO_BIN_EXE_widthlab"))
            .args(args)
            .env(key, val)
            .output()
            .unwrap()
    };
    let o = with_env(&["instance", "random", "--m", "5"], "WIDTHLAB_SEED", "1");
    assert_eq!(serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap(), a);
    let o = with_env(&["instance", "all-pairs", "--m", "3"], "WIDTHLAB_THREADS", "zero");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("WIDTHLAB_THREADS"));
}
