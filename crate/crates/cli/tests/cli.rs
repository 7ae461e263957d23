use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const CE3: &str = r#"{"schema": "fairslice/1", "players": [
 {"name": "1", "density": [{"from": 0, "to": 1, "density": 1}]},
 {"name": "2", "density": [{"from": 0, "to": "1/3", "density": 3}, {"from": "1/3", "to": 1, "density": 0}]},
 {"name": "3", "density": [{"from": 0, "to": "2/3", "density": 0}, {"from": "2/3", "to": 1, "density": 3}]}
]}"#;

const CE2: &str = r#"{"schema": "fairslice/1",
 "procedure": {"name": "cut-choose", "cutter": "A"},
 "players": [
 {"name": "A", "density": [{"from": 0, "to": 1, "density": 1}]},
 {"name": "B", "density": [{"from": 0, "to": "1/4", "density": 2}, {"from": "1/4", "to": "3/4", "density": 0}, {"from": "3/4", "to": 1, "density": 2}]}
]}"#;

fn fairslice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairslice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn every_counterexample_reproduces() {
    for id in 1..=6 {
        let o = fairslice(&["paper-ce", &id.to_string()]);
        assert_eq!(o.status.code(), Some(0), "case {id}: {}", stdout(&o));
        assert!(stdout(&o).contains("\"passed\": true"));
    }
    assert_eq!(fairslice(&["paper-ce", "7"]).status.code(), Some(2));
}

#[test]
fn strict_ep_is_undefined() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "ce3.json", CE3);
    let o = fairslice(&["run", s(&sc), "--procedure", "ep", "--strict"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("(1,3,2)"));
    let o = fairslice(&["run", s(&sc), "--procedure", "ep"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3/5 (0.6)"));
}

#[test]
fn run_then_verify() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "ce2.json", CE2);
    let out = dir.path().join("alloc.json");
    let o = fairslice(&[
        "run",
        s(&sc),
        "--procedure",
        "cut-choose",
        "--cutter",
        "A",
        "-o",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = fairslice(&["verify", s(&sc), s(&out), "--checks", "envy,pareto"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"check\": \"envy-free\""));
    assert!(
        text.contains("\"check\": \"pareto-optimal\",\n      \"holds\": false"),
        "{text}"
    );
}

#[test]
fn verify_with_truth_profile() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "ce2.json", CE2);
    let alloc = write(
        &dir,
        "a.json",
        r#"{"schema": "fairslice/1", "portions": [
          {"player": "A", "intervals": [{"from": 0, "to": 1}]},
          {"player": "B", "intervals": []}]}"#,
    );
    let truth = write(
        &dir,
        "t.json",
        r#"{"schema": "fairslice/1", "players": [
          {"name": "B", "density": [{"from": 0, "to": 1, "density": 1}]},
          {"name": "A", "density": [{"from": 0, "to": 1, "density": 1}]}]}"#,
    );
    let o = fairslice(&[
        "verify",
        s(&sc),
        s(&alloc),
        "--truth",
        s(&truth),
        "--checks",
        "proportional",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"holds\": false"));
}

#[test]
fn strict_cut_and_choose_with_plateau_cutter() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "ce2.json", CE2);
    let o = fairslice(&[
        "run",
        s(&sc),
        "--procedure",
        "cut-choose",
        "--cutter",
        "B",
        "--strict",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("NON_UNIQUE_MEDIAN"));
}

#[test]
fn validation_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        &CE3.replace("\"density\": 1}", "\"density\": \"-1\"}"),
    );
    let o = fairslice(&["run", s(&bad), "--procedure", "moving-knife"]);
    assert_eq!(o.status.code(), Some(2));
    let missing = dir.path().join("nope.json");
    assert_eq!(
        fairslice(&["run", s(&missing), "--procedure", "ep"])
            .status
            .code(),
        Some(2)
    );
    let sc = write(&dir, "ce3.json", CE3);
    assert_eq!(
        fairslice(&["run", s(&sc), "--procedure", "sp-e"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fairslice(&["run", s(&sc), "--procedure", "knife"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fairslice(&["run", s(&sc), "--procedure", "ep", "--tie", "coin"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn seeded_runs_are_identical() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "ce3.json", CE3);
    let a = fairslice(&[
        "run",
        s(&sc),
        "--procedure",
        "moving-knife",
        "--tie",
        "seed:9",
    ]);
    let b = fairslice(&[
        "run",
        s(&sc),
        "--procedure",
        "moving-knife",
        "--tie",
        "seed:9",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn manipulation_search() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "ce2.json", CE2);
    let candidates = write(
        &dir,
        "c.json",
        r#"{"schema": "fairslice/1", "players": [
          {"name": "honest", "density": [{"from": 0, "to": 1, "density": 1}]}]}"#,
    );
    let opponents = write(
        &dir,
        "o.json",
        r#"{"schema": "fairslice/1", "players": [
          {"name": "plateau", "density": [{"from": 0, "to": "1/4", "density": 2}, {"from": "1/4", "to": "3/4", "density": 0}, {"from": "3/4", "to": 1, "density": 2}]}]}"#,
    );
    let o = fairslice(&[
        "manipulate",
        s(&sc),
        "--player",
        "A",
        "--candidates",
        s(&candidates),
        "--opponents",
        s(&opponents),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("\"found\": false"));

    let no_block = write(&dir, "plain.json", CE3);
    let o = fairslice(&[
        "manipulate",
        s(&no_block),
        "--player",
        "1",
        "--candidates",
        s(&candidates),
        "--opponents",
        s(&opponents),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
