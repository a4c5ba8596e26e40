use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn edgesplit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgesplit")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const DEPTH_EXAMPLE: &str = "9 8\n1 2\n1 3\n1 4\n1 5\n1 6\n1 7\n7 8\n7 9\n";

#[test]
fn invariants_json_over_rationals() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.txt"), DEPTH_EXAMPLE).unwrap();
    let o = edgesplit(&["invariants", "g.txt", "--field", "q", "--format", "json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["depth"], 3);
    assert_eq!(v["report"]["field"], "q");
    assert_eq!(v["betti_ideal"]["convention"], "of_ideal");
}

#[test]
fn split_enum_lists_every_splitting() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c3.txt"), "3 3\n1 2\n2 3\n1 3\n").unwrap();
    let o = edgesplit(&["split-enum", "c3.txt", "--format", "json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 8);
    let o = edgesplit(&["split-enum", "c3.txt", "--format", "json", "--dedupe"], dir.path());
    let comps: Vec<u64> =
        stdout(&o).lines().map(|l| serde_json::from_str::<Value>(l).unwrap()["components"].as_u64().unwrap()).collect();
    assert!(comps.len() < 8 && comps.contains(&1) && comps.contains(&3));
}

#[test]
fn sigma_and_cg() {
    let dir = tempfile::tempdir().unwrap();
    let o = edgesplit(&["sigma", "(x1x3x5, x1^2*x4^3*x7)", "--inline", "-t", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("(x1*x4*x7, x1*x2*x6*x7*x8*x12) in 12 variables"));
    std::fs::write(dir.path().join("p4.txt"), "4 3\n1 2\n2 3\n3 4\n").unwrap();
    let o = edgesplit(&["cg", "p4.txt", "--format", "json"], dir.path());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&String> = v["values"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["1", "2", "3"]);
}

#[test]
fn search_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let o = edgesplit(&["search", "--family", "all_connected:4", "--format", "csv", "--out", out], dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let read = |p: &str| std::fs::read(dir.path().join(p)).unwrap();
    assert_eq!(read("a/records.csv"), read("b/records.csv"));
    assert_eq!(read("a/manifest.json"), read("b/manifest.json"));
    let m: Value = serde_json::from_slice(&read("a/manifest.json")).unwrap();
    assert_eq!(m["config_hash"].as_str().unwrap().len(), 64);
    assert!(String::from_utf8(read("a/records.csv")).unwrap().starts_with("graph_id,split_id,"));
}

#[test]
fn witnesses_replay_through_check() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.txt"), DEPTH_EXAMPLE).unwrap();
    let o = edgesplit(
        &["search", "--family", "file:g.txt", "--filter", "special2", "--cap-edges", "8", "--inequalities", "v", "--out", "w"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let witnesses = std::fs::read_to_string(dir.path().join("w/witnesses.jsonl")).unwrap();
    assert!(witnesses.lines().count() > 0);
    let o = edgesplit(&["check", "--replay", "w/witnesses.jsonl"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let tampered = witnesses.replacen("\"depth\":2", "\"depth\":1", 1);
    assert_ne!(tampered, witnesses);
    std::fs::write(dir.path().join("bad.jsonl"), tampered).unwrap();
    let o = edgesplit(&["check", "--replay", "bad.jsonl"], dir.path());
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn check_single_splitting() {
    let dir = tempfile::tempdir().unwrap();
    let s = r#"{"target":{"n":3,"edges":[[1,2],[2,3]]},"source":{"n":4,"edges":[[1,2],[3,4]]},"alpha":[1,2,2,3]}"#;
    std::fs::write(dir.path().join("s.json"), s).unwrap();
    let o = edgesplit(&["check", "--splitting", "s.json", "--format", "csv"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().next().unwrap().starts_with("graph_id,"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "1 1\n1 2\n").unwrap();
    std::fs::write(dir.path().join("star.txt"), "8 7\n1 2\n1 3\n1 4\n1 5\n1 6\n1 7\n1 8\n").unwrap();
    assert_eq!(edgesplit(&["--help"], dir.path()).status.code(), Some(0));
    assert_eq!(edgesplit(&["frobnicate"], dir.path()).status.code(), Some(1));
    assert_eq!(edgesplit(&["invariants", "bad.txt"], dir.path()).status.code(), Some(1));
    assert_eq!(edgesplit(&["invariants", "missing.txt"], dir.path()).status.code(), Some(1));
    let o = edgesplit(&["split-enum", "star.txt", "--cap-splittings", "100"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    let o = edgesplit(&["invariants", "star.txt", "--cap-n", "4"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}
