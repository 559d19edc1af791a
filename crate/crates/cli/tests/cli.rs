use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use magic_ehrhart_core::io;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_magic-ehrhart"));
    c.env_remove("MAGIC_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn count_examples() {
    let dir = TempDir::new().unwrap();
    let g4 = gen(dir.path(), "g4.json", &["--family", "gn", "-n", "4"]);
    let g2 = gen(dir.path(), "g2.json", &["--family", "gn", "-n", "2"]);
    assert_eq!(stdout(&run(&["count", "--graph", p(&g4), "-k", "3"])), "36\n");
    assert_eq!(stdout(&run(&["count", "--graph", p(&g2), "-k", "0"])), "1\n");
    assert_eq!(stdout(&run(&["count", "--graph", p(&g2), "-k", "5"])), "36\n");
    let json: Value = serde_json::from_str(&stdout(&run(&[
        "count", "--graph", p(&g4), "-k", "4", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(json["count"], 74);
}

#[test]
fn series_formats() {
    let dir = TempDir::new().unwrap();
    let g2 = gen(dir.path(), "g2.json", &["--family", "gn", "-n", "2"]);
    let csv = stdout(&run(&["series", "--graph", p(&g2), "--kmax", "3", "--format", "csv"]));
    assert_eq!(csv, "k,magic\n0,1\n1,4\n2,9\n3,16\n");

    let g4 = gen(dir.path(), "g4.json", &["--family", "gn", "-n", "4"]);
    let out = stdout(&run(&[
        "series", "--graph", p(&g4), "--kmax", "4", "--with-index", "--format", "json",
    ]));
    let s: Vec<u64> = out
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["index"].as_u64().unwrap())
        .collect();
    assert_eq!(s, vec![1, 4, 10, 20, 35]);

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"vertices":["a","b"],"edges":[]}"#).unwrap();
    let csv = stdout(&run(&["series", "--graph", p(&empty), "--kmax", "2", "--format", "csv"]));
    assert_eq!(csv, "k,magic\n0,1\n1,1\n2,1\n");
}

#[test]
fn ehrhart_reports() {
    let dir = TempDir::new().unwrap();
    let g4 = gen(dir.path(), "g4.json", &["--family", "gn", "-n", "4"]);
    let v: Value = serde_json::from_str(&stdout(&run(&["ehrhart", "--graph", p(&g4), "--format", "json"]))).unwrap();
    assert_eq!(v["mqp"], 3);
    assert_eq!(v["denominator"], 3);
    assert_eq!(v["quasipolynomial"]["constituents"][1][0], "10/9");
    assert_eq!(v["quasipolynomial"]["constituents"][0][4], "1/18");

    let loops = gen(dir.path(), "loops.json", &["--family", "two-loops"]);
    let v: Value = serde_json::from_str(&stdout(&run(&["ehrhart", "--graph", p(&loops), "--format", "json"]))).unwrap();
    assert_eq!(v["quasipolynomial"]["constituents"], serde_json::json!([["1/1", "2/1", "1/1"]]));
}

#[test]
fn vertices_and_cf() {
    let dir = TempDir::new().unwrap();
    let g3 = gen(dir.path(), "g3.json", &["--family", "gn", "-n", "3"]);
    let v: Value = serde_json::from_str(&stdout(&run(&["vertices", "--graph", p(&g3), "--format", "json"]))).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(v["denominator"], 2);
    let out = run(&["cf", "--graph", p(&g3), "--polytope", "Q", "--verify", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let elems = v["elements"].as_array().unwrap();
    assert_eq!(elems.len(), 3);
    assert!(elems.iter().all(|e| e["height"] == 1 && e["verdict"]["unrefuted_up_to"] == 3));
}

#[test]
fn check_reports_certificates() {
    let dir = TempDir::new().unwrap();
    let k2 = gen(dir.path(), "k2.json", &["--family", "path", "-n", "2"]);
    let v: Value = serde_json::from_str(&stdout(&run(&["check", "--graph", p(&k2), "--format", "json"]))).unwrap();
    assert_eq!(v["certificate"], "polynomial");
    assert_eq!(v["matching_preclusion"], "one");
    let g4 = gen(dir.path(), "g4.json", &["--family", "gn", "-n", "4"]);
    let v: Value = serde_json::from_str(&stdout(&run(&["check", "--graph", p(&g4), "--format", "json"]))).unwrap();
    assert_eq!(v["certificate"], "no_certificate");
}

#[test]
fn decompose_labeling_file() {
    let dir = TempDir::new().unwrap();
    let c6 = gen(dir.path(), "c6.json", &["--family", "cycle", "-n", "6"]);
    let text = std::fs::read_to_string(&c6).unwrap();
    let g = io::graph_hash(&io::graph_from_json(&text).unwrap());
    let lab = dir.path().join("l.json");
    std::fs::write(&lab, format!(r#"{{"graph_hash":"{g}","labels":[1,1,1,1,1,1]}}"#)).unwrap();
    let v: Value = serde_json::from_str(&stdout(&run(&[
        "decompose", "--graph", p(&c6), "--labeling", p(&lab), "--format", "json",
    ])))
    .unwrap();
    assert_eq!(v["pieces"].as_array().unwrap().len(), 2);

    let wrong = dir.path().join("w.json");
    std::fs::write(&wrong, r#"{"graph_hash":"00","labels":[1,1,1,1,1,1]}"#).unwrap();
    let out = run(&["decompose", "--graph", p(&c6), "--labeling", p(&wrong)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fn_table() {
    let csv = stdout(&run(&["fn", "-n", "3", "--kmax", "7", "--diff", "3", "--format", "csv"]));
    let last = csv.lines().last().unwrap();
    // C(4,3) + C(7,3) = 39; floor(7/3) + 1 = 3
    assert_eq!(last, "7,39,3");
    assert_eq!(run(&["fn", "-n", "2", "--kmax", "3", "--diff", "3"]).status.code(), Some(2));
}

#[test]
fn verify_paper_exit_codes() {
    let out = run(&["verify-paper", "--filter", "two-loops"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS [4] two-loops"));

    let out = run(&["verify-paper", "--filter", "quasiperiod", "--format", "csv"]);
    assert_eq!(stdout(&out), "criterion,name,status\n6,minimum-quasiperiods,pass\n");

    let out = run(&["verify-paper", "--filter", "fn-difference", "--fn-floor-offset", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL [5] fn-difference-lemma"));
}

#[test]
fn usage_and_budget_errors() {
    assert_eq!(run(&["count", "-k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--graph", "/no/such/file.json", "-k", "1"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let g5 = gen(dir.path(), "g5.json", &["--family", "gn", "-n", "5"]);
    let out = run(&["vertices", "--graph", p(&g5), "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = bin().args(["vertices", "--graph", p(&g5)]).env("MAGIC_BUDGET", "10").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["series", "--graph", p(&g5), "--kmax", "30", "--node-budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g3 = gen(dir.path(), "g3.json", &["--family", "gn", "-n", "3"]);
    for args in [
        vec!["vertices", "--graph", p(&g3), "--format", "json"],
        vec!["series", "--graph", p(&g3), "--kmax", "6", "--with-index", "--format", "json"],
        vec!["cf", "--graph", p(&g3), "--format", "csv"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
