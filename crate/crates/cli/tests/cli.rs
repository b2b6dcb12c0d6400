//! End-to-end tests of the `tq` binary.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use twenty_questions::{Distribution, Rational};
use twenty_questions_cli::{AnalyzeOutput, Comparison};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn tq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tq")).args(args).output().expect("run tq")
}

fn tq_with_input(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn tq");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports_exact_costs() {
    let uniform = fixture("uniform20.json");
    let out = tq(&["analyze", path(&uniform), "--strategy", "huffman"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("22/5 (4.400000)"));
    assert!(text.contains("information yield: 4.321928 bits"));

    let text = stdout(&tq(&["analyze", path(&uniform), "--strategy", "sequential"]));
    assert!(text.contains("209/20 (10.450000)"));

    let text = stdout(&tq(&["analyze", path(&fixture("four.json")), "--strategy", "division"]));
    assert!(text.contains("2/1 (2.000000)"));
}

#[test]
fn machine_output_keeps_exact_rationals() {
    for strategy in ["sequential", "division", "shannon-fano", "huffman", "optimal"] {
        let out = tq(&["analyze", path(&fixture("skewed.json")), "--strategy", strategy, "--format", "machine"]);
        assert!(out.status.success(), "{strategy}");
        let parsed: AnalyzeOutput = serde_json::from_str(&stdout(&out)).unwrap();
        let text = stdout(&tq(&["analyze", path(&fixture("skewed.json")), "--strategy", strategy]));
        let printed = format!("expected questions: {} ", parsed.report.expected_questions);
        assert!(text.contains(&printed), "{strategy}: {printed}");
        let mass: Rational = parsed.report.depth_histogram.values().map(|e| &e.probability).sum();
        assert_eq!(mass, Rational::one());
    }

    let out = tq(&["compare", path(&fixture("four.json")), "--format", "machine"]);
    let parsed: Comparison = serde_json::from_str(&stdout(&out)).unwrap();
    let huffman = parsed.rows.iter().find(|r| r.strategy == "huffman").unwrap();
    assert_eq!(huffman.expected_questions, "28/15".parse().unwrap());
    assert_eq!(huffman.optimal, Some(true));
}

#[test]
fn compare_golden_files() {
    for (fixture_name, golden) in [
        ("uniform20.json", include_str!("golden/compare_uniform20.txt")),
        ("four.json", include_str!("golden/compare_four.txt")),
    ] {
        let out = tq(&["compare", path(&fixture(fixture_name))]);
        assert!(out.status.success());
        assert_eq!(stdout(&out), golden, "{fixture_name}");
    }
}

#[test]
fn compare_huffman_never_loses() {
    for name in ["uniform20.json", "four.json", "single.json", "coin.json", "dyadic.json", "skewed.json", "thirds.json"]
    {
        let out = tq(&["compare", path(&fixture(name)), "--format", "machine"]);
        let parsed: Comparison = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(parsed.yields_agree, "{name}");
        let huffman = &parsed.rows.iter().find(|r| r.strategy == "huffman").unwrap().expected_questions;
        assert!(parsed.rows.iter().all(|r| *huffman <= r.expected_questions), "{name}");
    }
    let single = stdout(&tq(&["compare", path(&fixture("single.json")), "--format", "machine"]));
    let parsed: Comparison = serde_json::from_str(&single).unwrap();
    assert!(parsed.rows.iter().all(|r| r.expected_questions == Rational::zero()));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["compare", "FIXTURE"],
        vec!["analyze", "FIXTURE", "--format", "machine"],
        vec!["export-dot", "FIXTURE", "--strategy", "division"],
        vec!["simulate", "FIXTURE", "--trials", "20000"],
    ] {
        let f = fixture("skewed.json");
        let args: Vec<&str> = args.iter().map(|a| if *a == "FIXTURE" { path(&f) } else { a }).collect();
        assert_eq!(tq(&args).stdout, tq(&args).stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let malformed = write("bad.json", "{ not json");
    let bad_p = write("bad_p.json", r#"{"outcomes":[{"label":"a","p":"half"}]}"#);
    let short = write("short.json", r#"{"outcomes":[{"label":"a","p":"1/2"},{"label":"b","p":"1/4"}]}"#);
    let dup = write("dup.json", r#"{"outcomes":[{"label":"a","p":"1/2"},{"label":"a","p":"1/2"}]}"#);
    let wide = dir.path().join("wide.json");
    assert!(tq(&["uniform", "30", "--out", path(&wide)]).status.success());

    assert_eq!(tq(&["analyze", path(&malformed)]).status.code(), Some(2));
    assert_eq!(tq(&["analyze", path(&bad_p)]).status.code(), Some(2));
    let out = tq(&["analyze", path(&short)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("deficit 1/4"));
    assert_eq!(tq(&["analyze", path(&dup)]).status.code(), Some(3));
    assert_eq!(tq(&["uniform", "0"]).status.code(), Some(3));
    assert_eq!(tq(&["simulate", path(&fixture("coin.json")), "--trials", "0"]).status.code(), Some(3));
    assert_eq!(tq(&["analyze", path(&wide), "--strategy", "division"]).status.code(), Some(4));
    assert_eq!(tq(&["analyze", path(&wide), "--strategy", "optimal"]).status.code(), Some(4));
    assert_eq!(tq(&["analyze", path(&wide), "--strategy", "huffman"]).status.code(), Some(0));
    assert_eq!(tq(&["compare", path(&wide)]).status.code(), Some(0));

    let missing = dir.path().join("missing.json");
    assert_eq!(tq(&["analyze", path(&missing)]).status.code(), Some(6));
    let unwritable = dir.path().join("no/such/dir/out.dot");
    let out = tq(&["export-dot", path(&fixture("four.json")), "--out", path(&unwritable)]);
    assert_eq!(out.status.code(), Some(6));
    assert_eq!(tq(&["uniform", "4", "--out", path(&unwritable)]).status.code(), Some(6));

    let out = tq_with_input(&["play", path(&fixture("uniform20.json"))], "y\n");
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn uniform_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u20.json");
    assert!(tq(&["uniform", "20", "--out", path(&out)]).status.success());
    let written = std::fs::read_to_string(&out).unwrap();
    let d = Distribution::parse(&written).unwrap();
    assert_eq!(d, Distribution::uniform(20, "box").unwrap());
    assert_eq!(written, std::fs::read_to_string(fixture("uniform20.json")).unwrap());
}

#[test]
fn dot_export_shapes() {
    let uniform = fixture("uniform20.json");
    let dot = stdout(&tq(&["export-dot", path(&uniform), "--strategy", "huffman"]));
    assert!(dot.starts_with("digraph questions {"));
    assert_eq!(dot.matches("shape=").count(), 39);
    assert_eq!(dot.matches("shape=box").count(), 19);
    assert_eq!(dot.matches("[label=\"Yes\"]").count(), 19);
    assert_eq!(dot.matches("[label=\"No\"]").count(), 19);

    let dot = stdout(&tq(&["export-dot", path(&uniform), "--strategy", "sequential"]));
    assert_eq!(dot.matches("shape=box").count(), 19);
    // Each question's No edge leads to the next question in the chain.
    let chain_links = dot.lines().filter(|l| l.contains("[label=\"No\"]")).count();
    assert_eq!(chain_links, 19);
    for k in 0..18 {
        let from = 2 * k;
        assert!(dot.contains(&format!("n{from} -> n{} [label=\"No\"]", from + 2)), "link {k}");
    }
}

#[test]
fn play_sessions() {
    let uniform = fixture("uniform20.json");
    let out = tq_with_input(&["play", path(&uniform), "--strategy", "sequential"], &"n\n".repeat(19));
    assert!(out.status.success());
    assert!(stdout(&out).contains("It is box20: identified after 19 questions"));

    // Answer truthfully for box07 under Huffman.
    let d = Distribution::uniform(20, "box").unwrap();
    let (tree, _) = twenty_questions::build_huffman(&d);
    let answers: String = tree.codewords()[&6].chars().map(|b| if b == '1' { "Y\n" } else { "n\n" }).collect();
    let out = tq_with_input(&["play", path(&uniform)], &answers);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("It is box07"));
    assert!(text.contains("after 4 questions") || text.contains("after 5 questions"));

    let out = tq_with_input(&["play", path(&fixture("single.json"))], "");
    assert!(out.status.success());
    assert!(stdout(&out).contains("It is only: identified after 0 questions"));
}

#[test]
fn simulate_is_reproducible_across_threads() {
    let uniform = fixture("uniform20.json");
    let base = ["simulate", path(&uniform), "--trials", "100000", "--seed", "42", "--format", "machine"];
    let one = tq(&[&base[..], &["--threads", "1"]].concat());
    let many = tq(&[&base[..], &["--threads", "5"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let value: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(value["expected_questions"], "22/5");
    assert!((value["mean"].as_f64().unwrap() - 4.4).abs() < 0.01);
}
