//! The example knowledge bases shipped in `fixtures/`.

use std::path::PathBuf;

use mknf::parser::{load, SourceBundle};
use mknf::KnowledgeBase;

macro_rules! fixture {
    ($name:literal) => {
        (
            $name,
            include_str!(concat!("../fixtures/", $name, ".mknf")),
            include_str!(concat!("../fixtures/", $name, ".onto")),
        )
    };
}

const ALL: &[(&str, &str, &str)] = &[
    fixture!("insurance"),
    fixture!("callback"),
    fixture!("callback_not"),
    fixture!("object"),
    fixture!("customs"),
    fixture!("loop"),
    fixture!("two_components"),
    fixture!("unsafe"),
];

/// Names of all fixtures, in a fixed order.
pub fn names() -> Vec<&'static str> {
    ALL.iter().map(|f| f.0).collect()
}

/// Fixtures that load into DL-safe knowledge bases.
pub fn safe_names() -> Vec<&'static str> {
    names().into_iter().filter(|n| *n != "unsafe").collect()
}

pub fn source(name: &str) -> SourceBundle {
    let (_, rules, onto) = ALL.iter().find(|f| f.0 == name).unwrap_or_else(|| panic!("no fixture `{name}`"));
    SourceBundle { rules_text: rules.to_string(), ontology_text: onto.to_string() }
}

/// Parses a fixture; panics on any diagnostic.
pub fn kb(name: &str) -> KnowledgeBase {
    let loaded = load(&source(name));
    assert!(!loaded.has_errors(), "fixture {name}: {:?} {:?}", loaded.rule_diagnostics, loaded.ontology_diagnostics);
    loaded.kb.expect("no errors")
}

/// Paths of a fixture's rules and ontology files on disk.
pub fn paths(name: &str) -> (PathBuf, PathBuf) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    (dir.join(format!("{name}.mknf")), dir.join(format!("{name}.onto")))
}
