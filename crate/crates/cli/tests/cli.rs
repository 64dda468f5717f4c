use std::path::PathBuf;

use truecon_cli::run_command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String) {
    let o = run_command(std::iter::once("truecon").chain(args.iter().copied()));
    (o.code, o.output)
}

#[test]
fn hhpb_separates_fixtures() {
    let (e, f) = (fixture("E.json"), fixture("F.json"));
    let (code, out) = run(&["check", "hhpb", "--scs", &e, &f]);
    assert_eq!(code, 1, "{out}");
    assert!(out.starts_with("not equivalent"));
    let (code, _) = run(&["check", "frb-brm", "--scs", &e, &f]);
    assert_eq!(code, 0);
}

#[test]
fn frb_reports_the_brm_mismatch() {
    let (code, out) = run(&["check", "frb-brm", "--proc", "a.0 |[]| a.0", "a.a.0"]);
    assert_eq!(code, 1);
    assert!(out.contains("brm mismatch: {a:2} vs {a:1}"), "{out}");
    let (code, _) = run(&["check", "frb-brm", "--proc", "a.0 + b.0", "b.0 + a.0"]);
    assert_eq!(code, 0);
}

#[test]
fn hhpb_on_processes_needs_initial_terms() {
    assert_eq!(run(&["check", "hhpb", "--proc", "a.0 |[]| b.0", "b.0 |[]| a.0"]).0, 0);
    assert_eq!(run(&["check", "hhpb", "--proc", "a!.0", "a.0"]).0, 2);
}

#[test]
fn model_checking_exit_codes() {
    assert_eq!(run(&["mc", "--logic", "brm", "--proc", "a.0", "--formula", "<a> {a:1}"]).0, 0);
    assert_eq!(run(&["mc", "--logic", "brm", "--proc", "a.0", "--formula", "<b> true"]).0, 1);
    assert_eq!(run(&["mc", "--logic", "eil", "--proc", "a.0", "--formula", "<x:a> <<x>> true"]).0, 0);
    assert_eq!(run(&["mc", "--logic", "eil", "--proc", "a!.0", "--env", "x=a", "--formula", "<<x>> true"]).0, 0);
    let e = fixture("E.json");
    let args = ["mc", "--logic", "eil", "--scs", &e, "--config", "a1", "--env", "x=a1", "--formula", "<<x>> true"];
    assert_eq!(run(&args).0, 0);
    assert_eq!(run(&["mc", "--logic", "brm", "--proc", "a.0", "--formula", "<a"]).0, 2);
}

#[test]
fn json_output_is_valid() {
    let (code, out) = run(&["--json", "check", "frb-brm", "--proc", "a.0", "a.0"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], serde_json::Value::Bool(true));
    let (_, out) = run(&["--json", "denote", "a!.0 + b.0"]);
    serde_json::from_str::<serde_json::Value>(&out).unwrap();
}

#[test]
fn structure_commands() {
    let f = fixture("F.json");
    assert_eq!(run(&["stable", &f]).0, 0);
    let (code, out) = run(&["locality", &f]);
    assert_eq!(code, 1);
    assert!(out.contains("witness"));
    assert_eq!(run(&["locality", "--proc", "a.0 + b.0 |[]| c.0"]).0, 0);
    assert_eq!(run(&["brm", "a!.0 |[]| a!.0"]).1, "{a:2}\n");
}

#[test]
fn translate_and_parse() {
    let (code, out) = run(&["translate", "--formula", "{a:1}", "--actions", "a", "--history", "x1:a"]);
    assert_eq!(code, 0);
    assert!(out.contains("<<x1>>"), "{out}");
    assert_eq!(run(&["parse", "a!.b.0"]).0, 0);
    assert_eq!(run(&["parse", "b.a!.0"]).0, 1);
}

#[test]
fn xvalidate_is_deterministic() {
    let args = ["xvalidate", "--seed", "3", "--count", "15", "--local-only"];
    let (code, first) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(run(&args).1, first);
}
