use std::path::PathBuf;

use spatconf::extract::extract_entry;
use spatconf::model::{deserialize_annotation, validate};
use spatconf::penman::parse_document;
use spatconf::registry::Registry;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn check(name: &str) {
    let amr = std::fs::read_to_string(fixture(&format!("{name}.amr"))).unwrap();
    let gold = std::fs::read_to_string(fixture(&format!("gold/{name}.json"))).unwrap();
    let gold = deserialize_annotation(&gold).unwrap();
    assert!(validate(&gold).is_empty(), "{name} gold invalid: {:?}", validate(&gold));
    let docs = parse_document(&amr).unwrap();
    assert_eq!(docs.len(), 1);
    let x = extract_entry(&docs[0], &Registry::seed());
    assert!(x.warnings.is_empty(), "{name}: {:?}", x.warnings);
    assert_eq!(gold.entities, x.annotation.entities, "{name} entities");
    for (g, p) in gold.configurations.iter().zip(&x.annotation.configurations) {
        assert_eq!(g, p, "{name} {}", g.id);
    }
    assert_eq!(gold, x.annotation, "{name}");
}

#[test]
fn tower() {
    check("tower");
}

#[test]
fn heart() {
    check("heart");
}

#[test]
fn nlvr() {
    check("nlvr");
}

#[test]
fn blocks() {
    check("blocks");
}

#[test]
fn bell() {
    check("bell");
}
