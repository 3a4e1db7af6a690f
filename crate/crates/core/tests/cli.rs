mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::data;

const SEED: &str = "schema Token\n  roles n: Integer\ns-construction Seed\n  constituents\n    t: Token /O\n  constraints\n    t.n <- 1\n";

fn scim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scim")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn text(b: &[u8]) -> String {
    String::from_utf8(b.to_vec()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn sit2_remove(trace: &Path) -> Output {
    scim(&[
        "run",
        path(&data("demo.scim")),
        "--scene",
        path(&data("sit2.scene")),
        "--utterance",
        common::REMOVE,
        "--trace",
        path(trace),
    ])
}

#[test]
fn check_reports_counts_and_diagnostics() {
    let ok = scim(&["check", path(&data("demo.scim"))]);
    assert_eq!(code(&ok), 0);
    assert!(text(&ok.stdout).starts_with("ok: "));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scim");
    std::fs::write(&bad, "schema A inherits B\n").unwrap();
    let o = scim(&["check", path(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
    assert!(text(&o.stderr).contains("bad.scim"));

    std::fs::write(&bad, "schema X {").unwrap();
    let o = scim(&["check", path(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(text(&o.stderr).contains("bad.scim:1:10: "), "{}", text(&o.stderr));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &[][..],
        &["frobnicate"],
        &["check"],
        &["run"],
        &["oracle"],
        &["oracle", "--seed", "x"],
        &["run", "g.scim", "--utterance", "put"],
        &["run", "g.scim", "--beam", "0"],
        &["check", "/nonexistent/grammar.scim"],
    ] {
        let o = scim(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn oracle_passes_fifty_cases() {
    let o = scim(&["oracle", "--seed", "42", "--cases", "50"]);
    assert_eq!((code(&o), text(&o.stdout).as_str()), (0, "50/50 pass\n"));
}

#[test]
fn interpretation_lines() {
    let dir = tempfile::tempdir().unwrap();
    let o = sit2_remove(&dir.path().join("t.json"));
    assert_eq!(code(&o), 0, "{}", text(&o.stderr));
    let out = text(&o.stdout);
    let first: Vec<&str> = out.lines().next().unwrap().split(' ').collect();
    assert_eq!(first.len(), 5);
    assert_eq!((first[0], first[2], first[3], first[4]), ("1", "remove", "B", "-"));
    assert!(first[1].parse::<f64>().is_ok());

    let trace: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    for key in ["parse", "grounding", "interpretations"] {
        assert!(trace.get(key).is_some(), "trace lacks {key}");
    }
}

#[test]
fn no_interpretation_exits_one() {
    let o = scim(&["run", path(&data("demo.scim")), "--scene", path(&data("sit1.scene")), "--utterance", common::PUT]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
    assert_eq!(text(&o.stderr), "error: no interpretation\n");

    let o = scim(&["run", path(&data("demo.scim")), "--scene", path(&data("sit1.scene")), "--utterance", "put the blue square"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (ta, tb) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let (a, b) = (sit2_remove(&ta), sit2_remove(&tb));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&ta).unwrap(), std::fs::read(&tb).unwrap());
}

#[test]
fn plain_run_from_an_empty_state() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("seed.scim");
    std::fs::write(&g, SEED).unwrap();
    let o = scim(&["run", path(&g), "--cost-per-firing", "0.5"]);
    assert_eq!((code(&o), text(&o.stdout).as_str()), (0, "1 0.5000 branch 0 firings 1\n"));

    let o = scim(&["run", path(&g), "--max-firings", "0"]);
    assert_eq!(code(&o), 1);
    assert_eq!(text(&o.stdout), "1 0.0000 branch 0 firings 0 incomplete\n");
}
