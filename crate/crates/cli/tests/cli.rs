use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn vminor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vminor"))
        .args(args)
        .env_remove("VMINOR_BUDGET")
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const THREE_DEMAND: &str = r#"{
  "format": 1,
  "kind": "edp",
  "supply": {"vertices": ["a","b","c","d","e","f"], "edges": [["a","c"],["d","b"],["b","c"],["d","e"],["e","f"]]},
  "demand": {"vertices": ["a","c","d","f"], "edges": [["c","a"],["c","d"],["f","d"]]}
}"#;

#[test]
fn solve_writes_a_certificate_that_verifies() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("three_demand.json");
    let cert = dir.path().join("cert.json");
    fs::write(&inst, THREE_DEMAND).unwrap();
    let o = vminor(&["solve", p(&inst), "--cert", p(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"verdict\": \"yes\""));
    let o = vminor(&["verify", p(&inst), p(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "pass");
}

#[test]
fn reduce_chain_and_solve_each_stage() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("three_demand.json");
    fs::write(&inst, THREE_DEMAND).unwrap();
    let mid = dir.path().join("edpdt.json");
    let prov = dir.path().join("prov.json");
    let o = vminor(&["reduce", p(&inst), "--to", "edpdt", "-o", p(&mid), "--provenance", p(&prov)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&prov).unwrap().contains("\"a\""));
    let last = dir.path().join("bellvm.json");
    let dot = dir.path().join("bellvm.dot");
    let o = vminor(&["reduce", p(&mid), "--to", "bellvm", "-o", p(&last), "--dot", p(&dot)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph"));
    for f in [&mid, &last] {
        assert_eq!(vminor(&["solve", p(f)]).status.code(), Some(0));
    }
}

#[test]
fn reducing_backwards_is_an_error() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("three_demand.json");
    fs::write(&inst, THREE_DEMAND).unwrap();
    let o = vminor(&["reduce", p(&inst), "--to", "edp"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn truncation_exits_2_and_env_budget_applies() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("ring.json");
    let o = vminor(&["gen", "ring", "-k", "3", "--seed", "1", "-o", p(&inst)]);
    assert_eq!(o.status.code(), Some(0));
    let o = vminor(&["solve", p(&inst), "--budget", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("truncated"));
    let o = Command::new(env!("CARGO_BIN_EXE_vminor"))
        .args(["solve", p(&inst)])
        .env("VMINOR_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = vminor(&["orbit", p(&inst), "--budget", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_per_seed() {
    let a = vminor(&["gen", "random-4reg", "-n", "7", "-k", "2", "--seed", "11"]);
    let b = vminor(&["gen", "random-4reg", "-n", "7", "-k", "2", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let o = vminor(&["gen", "grid-demo", "-n", "4"]);
    assert!(stdout(&o).contains("\"kind\": \"edp\""));
}

#[test]
fn malformed_input_exits_2_and_wrong_certificate_exits_1() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"format\": 1, \"kind\": \"edp\"}").unwrap();
    assert_eq!(vminor(&["solve", p(&bad)]).status.code(), Some(2));

    let inst = dir.path().join("three_demand.json");
    fs::write(&inst, THREE_DEMAND).unwrap();
    let cert = dir.path().join("cert.json");
    fs::write(&cert, r#"{"format": 1, "kind": "edp", "routes": [{"demand": 0, "path": {"vertices": ["a", "c"], "edges": [0]}}]}"#).unwrap();
    let o = vminor(&["verify", p(&inst), p(&cert)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("fail"));
}

#[test]
fn orbit_and_tour_accept_text_graphs() {
    let dir = TempDir::new().unwrap();
    let path3 = dir.path().join("p3.txt");
    fs::write(&path3, "graph p3 simple\nv a\nv b\nv c\ne a b\ne b c\n").unwrap();
    let o = vminor(&["orbit", p(&path3)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"size\": 4"));

    let k = dir.path().join("two.txt");
    fs::write(&k, "graph two multi\nv x\nv y\ne x y\ne x y\ne x y\ne x y\n").unwrap();
    let o = vminor(&["tour", p(&k), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("word x y x y"));
}
