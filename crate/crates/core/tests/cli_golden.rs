//! Every `$ pin2fill ...` example in the README is run and its output
//! compared verbatim; JSON reports are checked for determinism and against
//! the shipped schema.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pin2fill"));
    c.env_remove("PIN2FILL_CATALOG");
    c
}

fn run(args: &[String]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

struct Example {
    line: usize,
    args: Vec<String>,
    expected: String,
    exit: i32,
}

fn readme_examples() -> Vec<Example> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../README.md");
    let text = std::fs::read_to_string(path).expect("README.md exists");
    let mut examples: Vec<Example> = Vec::new();
    let mut in_console = false;
    for (i, line) in text.lines().enumerate() {
        if line.starts_with("```") {
            in_console = line == "```console";
            continue;
        }
        if !in_console {
            continue;
        }
        if let Some(cmd) = line.strip_prefix("$ pin2fill ") {
            let args = shlex::split(cmd).expect("example command splits");
            examples.push(Example { line: i + 1, args, expected: String::new(), exit: 0 });
        } else {
            let ex = examples.last_mut().expect("console block starts with a command");
            match line.strip_prefix("[exit ").and_then(|r| r.strip_suffix(']')) {
                Some(code) => ex.exit = code.parse().unwrap(),
                None => {
                    ex.expected.push_str(line);
                    ex.expected.push('\n');
                }
            }
        }
    }
    examples
}

#[test]
fn readme_examples_match() {
    let examples = readme_examples();
    assert!(examples.len() >= 15, "found only {} examples", examples.len());
    for ex in &examples {
        let (code, out, err) = run(&ex.args);
        assert_eq!(code, ex.exit, "README line {}: exit code for {:?}\n{out}{err}", ex.line, ex.args);
        assert_eq!(format!("{out}{err}"), ex.expected, "README line {}: {:?}", ex.line, ex.args);
    }
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

const JSON_CASES: &[&str] = &[
    "obstruct --type II --h -1",
    "obstruct --type I --h 0 --C -20",
    "obstruct --type I --h 1/2 --C 7/3",
    "obstruct --type I --h 2",
    "obstruct --type I --h 1/3",
    "obstruct --contact-d 0 --tower gamma",
    "obstruct --contact-d 0 --tower alpha",
    "obstruct --contact-d 0 --tower gamma --not-j-invariant",
    "obstruct --type I --h 0 --contact-d 0 --tower beta",
    "catalog list",
    "catalog show Sigma(2,3,11)",
    "catalog run -Sigma(2,3,7)",
    "catalog run M(-5)",
    "catalog run Sigma(2,27,55)",
    "catalog show nothing",
    "gysin --model s3 --window -9:-1",
    "gysin --model rank-one --type I --h 0 --window -16:2",
    "gysin --model rank-one --type II --h -1/8 --window -12:12",
    "gysin --model y4k1 --k 1 --window -4:10",
    "gysin --model y4k1 --k 0 --window -4:10",
    "cobmap --b2plus 3 --b2minus 0",
    "cobmap --b2plus 1 --b2minus 9",
    "cobmap --b2plus 0 --b2minus 3",
    "lattice --b2plus 2 --b2minus 10",
    "lattice --b2plus 1 --b2minus 2",
    "lattice --b2plus 0 --b2minus 8",
];

fn json_args(case: &str) -> Vec<String> {
    let mut args = vec!["--json".to_string()];
    args.extend(case.split(' ').map(String::from));
    args
}

#[test]
fn json_reports_validate() {
    let schema = schema();
    for case in JSON_CASES {
        let (code, out, _) = run(&json_args(case));
        let report: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{case}: {e}\n{out}"));
        if let Err(errors) = schema.validate(&report) {
            let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
            panic!("{case}: schema violations: {msgs:#?}");
        }
        assert_eq!(report["exit_code"], code, "{case}");
    }
}

#[test]
fn json_reports_are_deterministic() {
    for case in JSON_CASES {
        let a = run(&json_args(case));
        let b = run(&json_args(case));
        assert_eq!(a, b, "{case}");
    }
}

#[test]
fn schema_rejects_malformed_reports() {
    let schema = schema();
    let (_, out, _) = run(&json_args("obstruct --type I --h 0"));
    let good: Value = serde_json::from_str(&out).unwrap();
    assert!(schema.is_valid(&good));
    let mut bad = good.clone();
    bad["result"]["verdict"]["b2plus"] = Value::from(3);
    assert!(!schema.is_valid(&bad));
    let mut bad = good.clone();
    bad["result"]["verdict"]["scope"] = Value::from("maybe");
    assert!(!schema.is_valid(&bad));
    let mut bad = good;
    bad["exit_code"] = Value::from(0);
    bad["error"] = serde_json::json!({"kind": "usage", "message": "x"});
    assert!(!schema.is_valid(&bad));
}

#[test]
fn usage_errors_exit_64() {
    for case in [
        "obstruct --type I --h 0 --contact-d 0 --tower beta",
        "obstruct --h 1",
        "gysin --model y4k1 --window -4:10",
        "gysin --model s3 --window 4",
        "cobmap --b2plus -1 --b2minus 0",
    ] {
        let args: Vec<String> = case.split(' ').map(String::from).collect();
        assert_eq!(run(&args).0, 64, "{case}");
    }
}

#[test]
fn expected_exit_codes() {
    for (case, code) in [
        ("obstruct --type I --h 0", 0),
        ("obstruct --type II --h 1/16", 2),
        ("catalog run Sigma(2,3,5)", 3),
        ("lattice --b2plus 3 --b2minus 0", 2),
    ] {
        let args: Vec<String> = case.split(' ').map(String::from).collect();
        assert_eq!(run(&args).0, code, "{case}");
    }
}
