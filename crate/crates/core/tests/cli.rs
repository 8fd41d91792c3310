mod common;

use std::path::Path;
use std::process::{Command, Output};

use f5_core::trace::{read_jsonl, trace_checks};

use common::*;

fn f5(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_f5"))
        .args(args)
        .output()
        .expect("spawn f5")
}

fn path(name: &str) -> String {
    problems_dir()
        .join(format!("{name}.txt"))
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn basis_lines(s: &str) -> Vec<&str> {
    s.lines()
        .skip_while(|l| !l.starts_with("basis:"))
        .take_while(|l| !l.starts_with("heads:"))
        .collect()
}

#[test]
fn check_passes_on_the_demo() {
    let o = f5(&["check", &path("demo-gf7")]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("ideal_equal: true"));
    assert!(out.contains("invariant failures: 0"));
    assert!(out.contains("heads: y^3, x^2, x*y"));
}

#[test]
fn check_reports_the_same_basis_as_gb() {
    let gb = f5(&["gb", &path("katsura3-gf7")]);
    let check = f5(&["check", &path("katsura3-gf7")]);
    assert_eq!(gb.status.code(), Some(0));
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(basis_lines(&stdout(&gb)), basis_lines(&stdout(&check)));
}

#[test]
fn oracle_agrees_in_size_with_the_reduced_f5_basis() {
    let o = f5(&["oracle", &path("cyclic3-gf32003")]);
    assert_eq!(o.status.code(), Some(0));
    let pf = problem("cyclic3-gf32003");
    let reduced = f5_core::oracle::buchberger(&pf.ring, &pf.polys);
    assert!(stdout(&o).contains(&format!("basis: {} polynomials", reduced.len())));
}

#[test]
fn budget_exit_code() {
    let o = f5(&["gb", "--max-pairs", "1", &path("cyclic3-gf7")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("budget exceeded: Pairs"));
}

#[test]
fn bad_input_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "p = 9\nvars: x\nx\n").unwrap();
    let o = f5(&["gb", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not an odd prime"));
    let o = f5(&["gb", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = f5(&["gb", "--order", "plex", &path("demo-gf7")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn failed_descent_exit_code() {
    // h = g puts t S(h) at S(g), outside the snapshot's range
    let run = run(&problem("cyclic3-gf7"));
    let g = run.marks[0].g.to_string();
    let o = f5(&["descend", "--g", &g, "--h", &g, &path("cyclic3-gf7")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("descent failed"));
}

#[test]
fn descend_on_a_chosen_multiple() {
    let run = run(&problem("katsura3-gf32003"));
    let mark = run.marks.last().unwrap();
    let h = mark.gg[0];
    let o = f5(&[
        "descend",
        "--g",
        &mark.g.to_string(),
        "--h",
        &h.to_string(),
        "--mult",
        "x0",
        &path("katsura3-gf32003"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("final:"));
    let o = f5(&["descend", &path("katsura3-gf32003")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("descent:"));
}

#[test]
fn trace_file_passes_the_checkers() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.jsonl");
    let o = f5(&[
        "trace",
        "--trace-out",
        out.to_str().unwrap(),
        &path("katsura3-gf7"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let events = read_jsonl(std::io::BufReader::new(std::fs::File::open(&out).unwrap())).unwrap();
    assert!(!events.is_empty());
    for c in trace_checks(&events, true).unwrap() {
        assert!(c.passed(), "{}: {:?}", c.name, c.failures);
    }
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<_> = (0..2)
        .map(|k| dir.path().join(format!("{k}.jsonl")))
        .collect();
    for f in &files {
        f5(&[
            "trace",
            "--trace-out",
            f.to_str().unwrap(),
            &path("cyclic3-gf32003"),
        ]);
    }
    let read = |p: &Path| std::fs::read(p).unwrap();
    assert_eq!(read(&files[0]), read(&files[1]));
    let a = f5(&["check", "--seed", "5", &path("generic-cubics-gf7")]);
    let b = f5(&["check", "--seed", "5", &path("generic-cubics-gf7")]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn json_report_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("r.json");
    let o = f5(&[
        "check",
        "--json-report",
        rep.to_str().unwrap(),
        &path("demo-gf32003"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&rep).unwrap()).unwrap();
    assert_eq!(v["command"], "check");
    assert_eq!(v["passed"], true);
    assert_eq!(v["ideal_equal"], true);
    assert_eq!(v["prime"], 32003);
    assert_eq!(v["basis_size"], 3);
}
