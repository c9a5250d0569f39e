use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use olp_core::{parse_program, preferred_wf_model, DSetVariant, LiteralSet, PartialModel};
use serde_json::Value;

const MODES: [&str; 7] = [
    "wfs",
    "pwfs",
    "pwfs-simplistic",
    "as",
    "pas",
    "brewka",
    "lfp-ap",
];
const PROGRAMS: [&str; 5] = ["ex3", "ex4", "ex5", "ex7", "defeasible"];

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn program(name: &str) -> PathBuf {
    corpus().join(format!("{name}.olp"))
}

fn olp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_olp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn solve(name: &str, mode: &str, extra: &[&str]) -> Output {
    let path = program(name);
    let mut args = vec!["solve", path.to_str().unwrap(), "--mode", mode];
    args.extend_from_slice(extra);
    olp(&args)
}

#[test]
fn golden_outputs_are_stable() {
    for name in PROGRAMS {
        for mode in MODES {
            for (flags, ext) in [
                (&["--trace"][..], "txt"),
                (&["--json", "--trace"][..], "json"),
            ] {
                let golden = corpus().join(format!("golden/{name}.{mode}.{ext}"));
                let expected = std::fs::read_to_string(&golden).unwrap();
                let first = solve(name, mode, flags);
                assert!(first.status.success(), "{name} {mode}: {}", stderr(&first));
                assert_eq!(stdout(&first), expected, "{}", golden.display());
                assert_eq!(stdout(&solve(name, mode, flags)), expected);
            }
        }
    }
}

#[test]
fn expected_model_sidecars() {
    for name in PROGRAMS {
        let sidecar = std::fs::read_to_string(corpus().join(format!("{name}.expected"))).unwrap();
        for line in sidecar.lines() {
            let (mode, expected) = line.split_once('\t').unwrap();
            let out = solve(name, mode, &["--atoms-only"]);
            assert_eq!(stdout(&out).trim_end(), expected, "{name} {mode}");
        }
    }
}

#[test]
fn documented_examples() {
    assert_eq!(
        stdout(&solve("ex3", "pwfs", &["--atoms-only"])),
        "true: {a} false: {b} unknown: {}\n"
    );
    assert_eq!(
        stdout(&solve("ex3", "wfs", &["--atoms-only"])),
        "true: {} false: {} unknown: {a, b}\n"
    );
    let lfp = stdout(&solve("ex3", "lfp-ap", &[]));
    assert!(lfp.starts_with("true: {} "), "{lfp}");
    assert_eq!(stdout(&solve("ex3", "as", &[])), "{a}\n{b}\n");
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

fn literal_list(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|l| l.as_str().unwrap())
        .collect()
}

#[test]
fn json_round_trips_into_the_model() {
    for name in PROGRAMS {
        let op = parse_program(&std::fs::read_to_string(program(name)).unwrap()).unwrap();
        for (mode, variant) in [
            ("pwfs", DSetVariant::Full),
            ("pwfs-simplistic", DSetVariant::Simplistic),
        ] {
            let doc = json(&solve(name, mode, &["--json"]));
            assert_eq!(doc["mode"], mode);
            assert!(doc.get("trace").is_none());
            let parse =
                |key: &str| LiteralSet::parse(op.universe(), literal_list(&doc[key])).unwrap();
            let model = PartialModel::new(parse("true"), parse("false")).unwrap();
            assert_eq!(model.unknown_set(), parse("unknown"));
            assert_eq!(
                model,
                preferred_wf_model(&op, variant).unwrap().model,
                "{name} {mode}"
            );
            for key in ["true", "false", "unknown"] {
                let list = literal_list(&doc[key]);
                let mut sorted = list.clone();
                sorted.sort_unstable();
                assert_eq!(list, sorted);
            }
        }
    }
}

#[test]
fn trace_lists_removal_sets() {
    let doc = json(&solve("ex3", "pwfs", &["--json", "--trace"]));
    let trace = doc["trace"].as_array().unwrap();
    assert_eq!(trace[0]["step"], 0);
    assert_eq!(literal_list(&trace[1]["dsets"]["r1"]), ["b"]);
    assert!(literal_list(&trace[1]["dsets"]["r2"]).is_empty());
}

#[test]
fn answer_sets_as_json() {
    let doc = json(&solve("ex3", "as", &["--json"]));
    assert_eq!(doc["answer_sets"], serde_json::json!([["a"], ["b"]]));
    let doc = json(&solve("ex4", "pas", &["--json"]));
    assert_eq!(doc["answer_sets"], serde_json::json!([]));
}

#[test]
fn check_prints_canonical_form() {
    let out = olp(&["check", program("ex3").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "r1: a :- not b.\nr2: b :- not a.\nr2 < r1.\n");
}

#[test]
fn input_errors_exit_1_with_spans() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = dir.path().join("cyclic.olp");
    std::fs::write(&cyclic, "r1: a.\nr2: b.\nr1 < r2.\nr2 < r1.\n").unwrap();
    let out = olp(&["check", cyclic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("cyclic preference"), "{err}");
    assert!(err.contains("cyclic.olp:4:1:"), "{err}");

    let broken = dir.path().join("broken.olp");
    std::fs::write(&broken, "r1: a :- b &.\n").unwrap();
    let out = olp(&["solve", broken.to_str().unwrap(), "--mode", "wfs"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("broken.olp:1:12:"),
        "{}",
        stderr(&out)
    );
    assert!(stderr(&out).contains("           ^"), "{}", stderr(&out));
}

#[test]
fn missing_file_exits_2() {
    let out = olp(&["check", "/nonexistent/program.olp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("/nonexistent/program.olp"));
}

#[test]
fn bench_small_and_empty() {
    let started = Instant::now();
    let out = olp(&["bench", "--sizes", "10"]);
    assert!(started.elapsed() < Duration::from_secs(1));
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4, "{text}");
    assert!(text.contains("pwfs exponent: n/a"));

    let out = olp(&["bench", "--sizes", ""]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3);
    assert_eq!(olp(&["bench", "--sizes", "ten"]).status.code(), Some(1));
}

#[test]
fn fuzz_emits_json_lines() {
    let out = olp(&["fuzz", "--seed", "7", "--count", "3"]);
    assert!(out.status.success());
    let lines: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    for v in &lines {
        assert!((7..10).contains(&v["seed"].as_u64().unwrap()));
        assert_eq!(v["program_hash"].as_str().unwrap().len(), 16);
        assert!(v["invariant"].is_string());
        assert!(v["status"].is_string());
    }
    assert_eq!(
        stdout(&out),
        stdout(&olp(&["fuzz", "--seed", "7", "--count", "3"]))
    );
}
