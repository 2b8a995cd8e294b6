//! The files in `fixtures/` match the catalogue and load without error.
//! Set `AQFTLAB_BLESS=1` to rewrite them.

use std::path::PathBuf;

use aqftlab::cli::docs::load_values;
use aqftlab::cli::fixtures::catalogue;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn fixture_files_match_catalogue() {
    let bless = std::env::var_os("AQFTLAB_BLESS").is_some();
    for (name, value) in catalogue() {
        let path = dir().join(name);
        let text = serde_json::to_string_pretty(&value).unwrap() + "\n";
        if bless {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        let parsed: serde_json::Value = serde_json::from_str(&on_disk).unwrap();
        assert_eq!(parsed, value, "{name} is stale; rerun with AQFTLAB_BLESS=1");
    }
}

/// Files a fixture is meant to be loaded with.
fn companions(name: &str) -> &'static [&'static str] {
    match name {
        "parity.json" => &["clifford2.json"],
        "exterior2.json" | "clifford_circle3.json" | "exterior_circle3.json" | "trivial_theory.json" => &["z2.json"],
        _ => &[],
    }
}

fn documents(value: serde_json::Value) -> Vec<serde_json::Value> {
    match value {
        serde_json::Value::Array(v) => v,
        other => vec![other],
    }
}

#[test]
fn fixtures_load() {
    let all = catalogue();
    for (name, value) in &all {
        let mut values = documents(value.clone());
        for c in companions(name) {
            let (_, v) = all.iter().find(|(n, _)| n == c).unwrap();
            values.extend(documents(v.clone()));
        }
        let lib = load_values(values).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(lib.count() > 0, "{name}");
    }
}

#[test]
fn fixtures_satisfy_the_schema() {
    let schema: serde_json::Value = serde_json::from_str(include_str!("../schemas/document.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for (name, value) in catalogue() {
        let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
    }
    assert!(!validator.is_valid(&serde_json::json!([])));
}
