use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use ddom::disjunctive::parse_record;
use ddom::{is_2dd_set, parse_graph6};

fn ddom(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ddom"))
        .args(args)
        .env_remove("CATALOG_PATH")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ddom-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn solve_prints_the_value() {
    let o = ddom(&["solve"], "Cl\n@\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2\n1\n");
}

#[test]
fn solve_reports_the_bad_line() {
    let o = ddom(&["solve"], "Cl\n\nC!\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn batch_of_random_graphs_gives_one_record_each() {
    let gen = ddom(&["enumerate", "14", "--random", "100", "--seed", "11"], "");
    assert!(gen.status.success());
    let input = stdout(&gen);
    assert_eq!(input.lines().count(), 100);
    let o = ddom(&["solve", "--format", "records", "--jobs", "2"], &input);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 100);
    for (line, code) in out.lines().zip(input.lines()) {
        let rec = parse_record(line).unwrap();
        assert!(rec.verified);
        assert_eq!(rec.graph, parse_graph6(code).unwrap(), "records keep input order");
        assert!(is_2dd_set(&rec.graph, &rec.set).unwrap());
    }
}

#[test]
fn generate_examples() {
    let order = |spec: &str| {
        let o = ddom(&["generate", spec], "");
        assert!(o.status.success(), "{spec}: {}", stderr(&o));
        parse_graph6(stdout(&o).trim()).unwrap()
    };
    let u2 = order("u:2");
    assert_eq!(u2.min_degree(), 2);
    assert!(ddom::graph::is_claw_free(&u2));
    assert_eq!(order("t:path4/4,2").order(), 24);
    assert_eq!(order("tadpole:5,1").order(), 6);
}

#[test]
fn generate_points_at_the_syntax_error() {
    let o = ddom(&["generate", "tadpole:5;1"], "");
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("position"), "{err}");
    assert!(err.contains("tadpole:5;1\n"), "{err}");
    assert!(err.lines().any(|l| l.trim() == "^"), "{err}");
}

#[test]
fn cycle_check_passes() {
    let o = ddom(&["check-bound", "prop2.1", "--n-max", "24", "--format", "records"], "");
    assert!(o.status.success());
    let report = stderr(&o);
    assert_eq!(report.lines().filter(|l| l.starts_with("order\t")).count(), 22);
    assert!(report.lines().last().unwrap().starts_with("summary\t0\t"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn claw_free_violators_are_the_exceptions() {
    let o = ddom(&["check-bound", "t1.2", "--n-max", "8", "--format", "records"], "");
    assert!(o.status.success());
    let mut names: Vec<String> = stderr(&o)
        .lines()
        .filter(|l| l.starts_with("exception\t"))
        .map(|l| l.rsplit('\t').next().unwrap().to_string())
        .collect();
    names.sort();
    assert_eq!(names, ["C4", "H3", "K1", "P2", "P4"]);
}

#[test]
fn third_bound_sweep_writes_report_file() {
    let dir = scratch("report");
    let path = dir.join("t26.txt");
    let o = ddom(&["check-bound", "t2.6", "--n-max", "7", "--out", path.to_str().unwrap()], "");
    assert!(o.status.success());
    let report = std::fs::read_to_string(&path).unwrap();
    assert!(report.contains("status: ok"), "{report}");
    assert!(report.contains("n=7   graphs=510       checked=509"), "{report}");
}

#[test]
fn external_stream_agrees_with_the_generator() {
    let mut stream = String::new();
    for n in ["3", "4", "5", "6", "7"] {
        stream += &stdout(&ddom(&["enumerate", n, "--min-degree", "2"], ""));
    }
    let ext = ddom(&["check-bound", "t2.6", "--n-max", "7", "--source", "-", "--format", "records"], &stream);
    let int = ddom(&["check-bound", "t2.6", "--n-max", "7", "--format", "records"], "");
    assert!(ext.status.success() && int.status.success());
    let rows = |o: &Output| stderr(o).lines().filter(|l| l.starts_with("order\t")).map(String::from).collect::<Vec<_>>();
    assert_eq!(rows(&ext), rows(&int));
}

#[test]
fn discovery_matches_the_catalog() {
    let o = ddom(&["discover-forbidden", "--n-max", "8"], "");
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn incomplete_catalog_is_a_counterexample() {
    let dir = scratch("catalog");
    let path = dir.join("short.g6");
    let full = include_str!("../../core/data/forbidden.g6");
    let short: String = full.lines().filter(|l| !l.contains("G6")).map(|l| format!("{l}\n")).collect();
    std::fs::write(&path, short).unwrap();
    let o = ddom(&["discover-forbidden", "--catalog-path", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("COUNTEREXAMPLE"), "{}", stderr(&o));
}

#[test]
fn certify_then_replay() {
    let dir = scratch("traces");
    let input = stdout(&ddom(&["enumerate", "20", "--random", "5", "--seed", "2"], ""));
    let o = ddom(&["certify", "--format", "records", "--trace-dir", dir.to_str().unwrap()], &input);
    assert!(o.status.success(), "{}", stderr(&o));
    for (i, (rec, code)) in stdout(&o).lines().zip(input.lines()).enumerate() {
        let rec = parse_record(rec).unwrap();
        assert!(rec.verified && rec.set.len() <= 20 / 3);
        let trace = dir.join(format!("{}.trace", i + 1));
        let r = ddom(&["replay", code, trace.to_str().unwrap()], "");
        assert!(r.status.success(), "{}", stderr(&r));
        assert_eq!(parse_record(stdout(&r).trim()).unwrap().set, rec.set);
    }
}

#[test]
fn certify_rejects_graphs_outside_the_hypotheses() {
    let o = ddom(&["certify"], "Cl\n");
    assert_eq!(o.status.code(), Some(2));
    let o = ddom(&["certify", "--skip-invalid"], "Cl\nEhfw\n");
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 1);
}
