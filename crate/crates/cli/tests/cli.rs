use std::path::{Path, PathBuf};
use std::process::Command;

use circuit_codes::analysis::compute_spread;
use circuit_codes::{builtin_code, Builtin};
use circuit_codes_cli::CodeFile;
use jsonschema::JSONSchema;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn schema(name: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&doc).expect("schema compiles")
}

/// Runs the binary; returns exit code and parsed stdout (if any).
fn run(args: &[&str]) -> (i32, Option<Value>) {
    let out = Command::new(env!("CARGO_BIN_EXE_circuit-codes")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).ok();
    (out.status.code().unwrap(), json)
}

fn run_valid(args: &[&str], schema_name: &str) -> (i32, Value) {
    let (code, json) = run(args);
    let json = json.unwrap_or_else(|| panic!("{args:?} printed no JSON"));
    let s = schema(schema_name);
    if let Err(errors) = s.validate(&json) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{args:?}: {msgs:?}\n{json:#}");
    }
    (code, json)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_example1_all_methods() {
    let (code, j) = run_valid(
        &["verify", path_str(&data("example1.code")), "--k", "9", "--method", "all"],
        "code_report.schema.json",
    );
    assert_eq!(code, 0);
    assert_eq!(j["spread"], 9);
    assert_eq!(j["phi"], 13);
    assert_eq!(j["xi"], 10);
    assert_eq!(j["citations"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_square_klee_precondition() {
    let (code, _) = run(&["verify", path_str(&data("square.code")), "--k", "3", "--method", "klee"]);
    assert_eq!(code, 3);
}

#[test]
fn verify_mutant_fails() {
    let t = CodeFile::read(&data("mutated_example1.code")).unwrap().code;
    assert_eq!(compute_spread(&t).unwrap().value, 8);
    let (code, j) = run_valid(&["verify", path_str(&data("mutated_example1.code")), "--k", "9"], "code_report.schema.json");
    assert_eq!(code, 1);
    assert_eq!(j["verified"], false);
    let (code, _) = run_valid(&["verify", path_str(&data("mutated_example1.code")), "--k", "8"], "code_report.schema.json");
    assert_eq!(code, 0);
}

#[test]
fn verify_reports_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.code");
    std::fs::write(&bad, "1 2 three\n").unwrap();
    assert_eq!(run(&["verify", path_str(&bad)]).0, 2);
    assert_eq!(run(&["verify", path_str(&dir.path().join("missing.code"))]).0, 2);
}

#[test]
fn verify_non_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.code");
    std::fs::write(&path, "1 2 3 1\n").unwrap();
    let (code, j) = run_valid(&["verify", path_str(&path)], "code_report.schema.json");
    assert_eq!(code, 0);
    assert_eq!((j["is_circuit"].clone(), j["spread"].clone()), (Value::Bool(false), Value::Null));
    assert_eq!(run(&["verify", path_str(&path), "--k", "1"]).0, 1);
}

#[test]
fn decomposition_preconditions() {
    let (code, _) = run(&["verify", path_str(&data("square.code")), "--k", "2", "--method", "decomposition"]);
    assert_eq!(code, 3);
    let (code, _) = run_valid(
        &["verify", path_str(&data("family_5_2.code")), "--k", "5", "--method", "decomposition"],
        "code_report.schema.json",
    );
    assert_eq!(code, 0);
}

#[test]
fn construct_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.code");
    let (code, j) = run_valid(&["construct", "family", "5", "2", "--out", path_str(&out)], "code_report.schema.json");
    assert_eq!(code, 0);
    assert_eq!((j["length"].clone(), j["spread"].clone()), (Value::from(24), Value::from(5)));
    assert_eq!(CodeFile::read(&out).unwrap(), CodeFile::read(&data("family_5_2.code")).unwrap());

    let (_, j) = run_valid(&["construct", "builtin", "example1"], "code_report.schema.json");
    assert_eq!(j["transitions"], builtin_code(Builtin::Example1).to_string());

    let (_, j) = run_valid(&["construct", "projection", "6", "3"], "code_report.schema.json");
    assert_eq!((j["length"].clone(), j["dimension"].clone(), j["spread"].clone()), (30.into(), 11.into(), 6.into()));

    assert_eq!(run(&["construct", "family", "6", "2"]).0, 3);
    assert_eq!(run(&["construct", "builtin", "nope"]).0, 3);
}

#[test]
fn search_commands() {
    for (args, best) in [
        (vec!["search", "6", "3"], 16),
        (vec!["search", "5", "2"], 14),
        (vec!["search", "9", "5", "--phi", "7", "--symmetric"], 24),
    ] {
        let (code, j) = run_valid(&args, "search_report.schema.json");
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(j["best_length"], best);
        assert_eq!(j["exhaustive"], true);
    }
    assert_eq!(run(&["search", "3", "5"]).0, 3);
    // nothing of length >= 2k+2 fits
    assert_eq!(run_valid(&["search", "3", "3"], "search_report.schema.json").0, 1);
}

#[test]
fn search_with_seed_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.code");
    let (code, j) = run_valid(
        &[
            "search", "16", "9",
            "--seed-witness", path_str(&data("remark1.code")),
            "--budget-nodes", "20000",
            "--out", path_str(&out),
        ],
        "search_report.schema.json",
    );
    assert_eq!(code, 0);
    assert_eq!(j["exhaustive"], false);
    assert_eq!(j["stopped"], "node_budget");
    assert!(j["best_length"].as_u64().unwrap() >= 44);
    let w = CodeFile::read(&out).unwrap();
    assert!(compute_spread(&w.code).unwrap().value >= 9);
    // a seed lacking the requested spread is a precondition failure
    assert_eq!(run(&["search", "16", "10", "--seed-witness", path_str(&data("example1.code"))]).0, 3);
}

#[test]
fn bounds_commands() {
    let (code, j) = run_valid(&["bounds", "16", "9"], "bounds_report.schema.json");
    assert_eq!(code, 0);
    assert_eq!(j["exact"]["value"], 44);
    let lowers: Vec<u64> = j["lower_bounds"].as_array().unwrap().iter().map(|b| b["value"].as_u64().unwrap()).collect();
    assert!(lowers.contains(&40) && lowers.contains(&44));
    assert_eq!(j["inconsistencies"].as_array().unwrap().len(), 0);

    let best = |j: &Value| {
        j["lower_bounds"].as_array().unwrap().iter().filter(|b| b["quantity"]["kind"] == "max_length")
            .filter_map(|b| b["value"].as_u64()).max()
    };
    let (_, j) = run_valid(&["bounds", "9", "5"], "bounds_report.schema.json");
    assert_eq!(best(&j), Some(24));
    let (_, j) = run_valid(&["bounds", "11", "6"], "bounds_report.schema.json");
    assert_eq!(best(&j), Some(30));
    // Singleton bound beyond 64 bits is printed as a string
    let (_, j) = run_valid(&["bounds", "200", "1"], "bounds_report.schema.json");
    assert!(j["lower_bounds"][0]["value"].is_string());
    assert_eq!(run(&["bounds", "3", "5"]).0, 3);
}

#[test]
fn project_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.code");
    let (code, j) = run_valid(
        &["project", path_str(&data("example1.code")), "16", "--out", path_str(&out)],
        "code_report.schema.json",
    );
    assert_eq!(code, 0);
    assert_eq!((j["dimension"].clone(), j["occurrences"].clone()), (15.into(), 2.into()));
    assert_eq!(j["length"], 42);
    let p = CodeFile::read(&out).unwrap();
    assert_eq!((p.code.len(), p.declared_k), (42, Some(8)));

    let (_, j) = run_valid(&["project", path_str(&data("example1.code")), "2"], "code_report.schema.json");
    assert_eq!((j["length"].clone(), j["occurrences"].clone()), (40.into(), 4.into()));
    let (_, j) = run_valid(&["project", path_str(&data("example1.code")), "1"], "code_report.schema.json");
    assert_eq!(j["length"], 42);
    assert!(j["spread"].as_u64().unwrap() >= 8);

    assert_eq!(run(&["project", path_str(&data("square.code")), "3"]).0, 3);
}

#[test]
fn probe_command() {
    let (code, j) = run_valid(&["probe", "9", "2", "--budget-nodes", "10000"], "search_report.schema.json");
    assert_eq!(code, 0);
    assert!(j["best_length"].as_u64().unwrap() >= 40);
    assert!(j["verdict"].is_string());
    assert_eq!(run(&["probe", "7", "2"]).0, 3);
}

#[test]
fn corpus_parses_and_round_trips() {
    let dir = std::fs::read_dir(data("")).unwrap();
    let mut seen = 0;
    for entry in dir {
        let path = entry.unwrap().path();
        let file = CodeFile::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = CodeFile::parse(&file.to_text()).unwrap();
        assert_eq!(again, file, "{}", path.display());
        assert_eq!(again.to_text(), file.to_text());
        seen += 1;
    }
    assert!(seen >= 6);
}
