//! The `cgheight` binary end to end: output formats, exit codes, caching.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use cgheight::padic::Padic;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cgheight"))
}

fn job_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../jobs").join(name)
}

fn run_file(path: &std::path::Path, args: &[&str]) -> Output {
    bin().arg("--job").arg(path).args(args).output().unwrap()
}

fn run_text(job: &str, args: &[&str]) -> Output {
    let mut child = bin()
        .args(["--job", "-"])
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(job.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const GENUS1: &str = "prime = 13\nprecision = 5\n[curve]\nf = [\"0\", \"-5\", \"0\", \"1\"]\n";

#[test]
fn genus1_height_job_matches_reference_values() {
    let out = run_file(&job_path("genus1_height.toml"), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("local height: 2*13 + 6*13^2 + 13^3 + 5*13^4 + O(13^5)"), "{text}");
    assert!(text.contains("global height: 12*13 + 4*13^2 + 10*13^3 + 9*13^4 + O(13^5)"), "{text}");
    // repeated runs print identical bytes
    assert_eq!(stdout(&run_file(&job_path("genus1_height.toml"), &[])), text);
}

#[test]
fn structured_output_round_trips() {
    let out = run_file(&job_path("genus1_height.toml"), &["--emit", "structured", "--verbosity", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "height");
    assert_eq!(v["prime"], 13);
    let entries = v["entries"].as_array().unwrap();
    assert!(entries.len() > 4, "verbosity 2 shows the breakdown");
    let local = entries.iter().find(|e| e["label"] == "local height").unwrap()["value"].as_str().unwrap();
    assert_eq!(Padic::parse(13, 20, local).unwrap().to_string(), local);
}

#[test]
fn job_from_stdin() {
    let out = run_text(&format!("command = \"cup-matrix\"\n{GENUS1}"), &[]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "command: cup-matrix\np: 13\nrequested precision: 5\nN row 0: [0, 1]\nN row 1: [-1, 0]\n");
}

#[test]
fn exit_codes_follow_the_error_class() {
    let bad_prime = format!("command = \"cup-matrix\"\n{}", GENUS1.replace("13", "21"));
    let out = run_text(&bad_prime, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[VALIDATION]"));

    let out = run_text("this is not toml", &["--emit", "structured"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["code"], "PARSE");

    let overlap = format!(
        "command = \"height\"\n{GENUS1}[[divisors]]\npoints = [[\"-1\", \"2\"]]\n[[divisors]]\npoints = [[\"-1\", \"-2\"]]\n"
    );
    let out = run_text(&overlap, &["--emit", "structured"]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["code"], "SUPPORT_OVERLAP");

    let starved = "command = \"height\"\nprime = 11\nprecision = 5\nguard = 0\n\
        [curve]\nf = [\"0\", \"40\", \"18\", \"-23\", \"0\", \"1\"]\n\
        [[divisors]]\npoints = [[\"-4\", \"24\"]]\n[[divisors]]\npoints = [[\"5\", \"30\"]]\n";
    let out = run_text(starved, &[]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[PRECISION_EXHAUSTED]"));

    let out = run_file(std::path::Path::new("/nonexistent/job.toml"), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn frobenius_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let job = format!("command = \"frobenius-matrix\"\n{GENUS1}");
    let run = || {
        let mut child = bin()
            .args(["--job", "-", "--verbosity", "1"])
            .env("CGHEIGHT_CACHE_DIR", dir.path())
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(job.as_bytes()).unwrap();
        child.wait_with_output().unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = run();
    assert_eq!(stdout(&first), stdout(&second));
    // the constant term of T^2 - a T + p
    assert!(stdout(&first).contains("charpoly (constant term first): [13 + O(13^5)"), "{}", stdout(&first));
}
