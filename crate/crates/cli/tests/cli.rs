use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hyperarr_cli::corpus::{default_corpus_dir, run_corpus, CaseStatus};
use serde_json::{json, Value};

fn corpus(name: &str) -> PathBuf {
    default_corpus_dir().join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperarr"))
        .args(args)
        .output()
        .unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn derivations_of_star_plus() {
    let v = run_json(&["derivations", path(&corpus("starplus.arr"))]);
    assert_eq!(v["schema"], json!(1));
    assert_eq!(v["command"], json!("derivations"));
    assert_eq!(v["degrees"], json!([1, 3, 3, 4]));
    assert_eq!(v["complete"], json!(true));
}

#[test]
fn charpoly_of_seven_lines() {
    let v = run_json(&["charpoly", path(&corpus("star7.arr"))]);
    assert_eq!(v["charpoly"], json!([-9, 15, -7, 1]));
    assert_eq!(v["roots"], json!([1, 3, 3]));
}

#[test]
fn nonfree_verdict_for_seven_lines() {
    let v = run_json(&["charpoly", "--hyperplane", "0 1 0", path(&corpus("star7.arr"))]);
    assert_eq!(v["nonfree"]["verdict"], json!("not_free"));
    assert_eq!(v["nonfree"]["restriction"], json!(2));
}

#[test]
fn graph_analyze_bipartite() {
    let v = run_json(&["graph-analyze", path(&corpus("bipartite12.graph"))]);
    assert_eq!(v["tri"], json!(6));
    assert_eq!(v["t"], json!(6));
}

#[test]
fn graph_analyze_with_derivations() {
    let v = run_json(&["graph-analyze", "--derivations", path(&corpus("fivevertex.graph"))]);
    assert_eq!(v["tri_bound"]["d"], json!(3));
    assert_eq!(v["tri_bound"]["slack"], json!(1));
}

#[test]
fn addition_reaches_degree_six() {
    let v = run_json(&[
        "addition",
        "--hyperplane",
        "1 -1 0",
        "--verify-up-to",
        "6",
        path(&corpus("xyz4.arr")),
    ]);
    assert_eq!(v["sorted_degrees"], json!([1, 2, 2, 3]));
    assert_eq!(v["verified_through"], json!(6));
}

#[test]
fn rationals_are_strings() {
    let v = run_json(&["freeness", path(&corpus("xyz5.arr"))]);
    assert_eq!(v["free"], json!(true));
    assert!(v["ratio"].as_str().unwrap().contains('/'));
}

#[test]
fn parse_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.arr");
    fs::write(&f, "dim 3\n1 0 0\n1 x 0\n").unwrap();
    let out = run(&["lattice", path(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("column 3"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let star = corpus("starplus.arr");
    let args = ["--json", "--emit-generators", "derivations", path(&star)];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let generic = corpus("generic5.arr");
    let args = ["--json", "--crosscheck", "--seed", "7", "tnumber", path(&generic)];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn low_cap_warns() {
    let out = run(&["--max-degree", "2", "derivations", path(&corpus("b4.arr"))]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncated"));
}

#[test]
fn crosscheck_flags_the_triangle() {
    let out = run(&["--crosscheck", "graph-analyze", path(&corpus("k3.graph"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("search gives 1"));
    let out = run(&["--crosscheck", "graph-analyze", path(&corpus("c4.graph"))]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn empty_corpus_passes_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["corpus", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no cases"));
}

#[test]
fn corrupted_expected_file_is_a_corpus_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(corpus("boolean3.arr"), dir.path().join("boolean3.arr")).unwrap();
    fs::write(
        dir.path().join("boolean3.expected.json"),
        "{\"schema\": 1, \"facts\": {\"t\": 2",
    )
    .unwrap();
    fs::copy(corpus("xyz5.arr"), dir.path().join("xyz5.arr")).unwrap();
    fs::copy(corpus("xyz5.expected.json"), dir.path().join("xyz5.expected.json")).unwrap();
    let s = run_corpus(dir.path()).unwrap();
    assert_eq!((s.passed(), s.failed(), s.errors()), (1, 0, 1));
    assert!(matches!(s.cases[0].status, CaseStatus::Error(_)));
    assert_eq!(run(&["corpus", path(dir.path())]).status.code(), Some(1));
}

#[test]
fn unknown_fact_is_a_corpus_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(corpus("boolean3.arr"), dir.path().join("b.arr")).unwrap();
    fs::write(
        dir.path().join("b.expected.json"),
        r#"{"schema": 1, "facts": {"colour": 3}}"#,
    )
    .unwrap();
    let s = run_corpus(dir.path()).unwrap();
    assert_eq!(s.errors(), 1);
}

#[test]
fn wrong_value_is_a_failure() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(corpus("boolean3.arr"), dir.path().join("b.arr")).unwrap();
    fs::write(
        dir.path().join("b.expected.json"),
        r#"{"schema": 1, "facts": {"t": 3, "size": 3}}"#,
    )
    .unwrap();
    let s = run_corpus(dir.path()).unwrap();
    match &s.cases[0].status {
        CaseStatus::Fail(ms) => {
            assert_eq!(ms.len(), 1);
            assert_eq!((ms[0].key.as_str(), &ms[0].got), ("t", &json!(2)));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(run(&["corpus", path(dir.path())]).status.code(), Some(2));
}

#[test]
fn shipped_corpus_passes() {
    let s = run_corpus(&default_corpus_dir()).unwrap();
    assert!(s.cases.len() >= 30);
    assert_eq!(s.failed() + s.errors(), 0, "{}", s.to_text());
    assert!(s.warnings.is_empty(), "{:?}", s.warnings);
}
