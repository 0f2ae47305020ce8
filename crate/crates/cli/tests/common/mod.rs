#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

/// Runs the CLI in-process; returns (exit code, stdout, stderr).
pub fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("widthlab").chain(args.iter().copied());
    let code = widthlab_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub fn run_json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    serde_json::from_str(&out).unwrap()
}

/// Runs the compiled binary; returns (exit code, stdout bytes, stderr).
pub fn run_bin(args: &[&str]) -> (i32, Vec<u8>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_widthlab"))
        .args(args)
        .output()
        .expect("binary runs");
    (o.status.code().unwrap_or(-1), o.stdout, String::from_utf8_lossy(&o.stderr).into_owned())
}

/// A fresh path under the test scratch directory.
pub fn scratch(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("widthlab-cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).display().to_string()
}

/// Writes the named instance and returns its path.
pub fn instance(name: &str, args: &[&str]) -> String {
    let path = scratch(&format!("{name}{}.json", args.join("").replace('-', "_")));
    let mut full = vec!["instance", name];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let (code, _, err) = run(&full);
    assert_eq!(code, 0, "{err}");
    path
}
