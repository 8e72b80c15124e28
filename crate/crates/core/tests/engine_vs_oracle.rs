use mknf::engine::{ConsistencyScope, Engine, EngineConfig};
use mknf::oracle::Oracle;
use std::collections::BTreeSet;
use mknf::KnowledgeBase;
use mknf_testkit::{fixtures, generate};

/// Returns a description of every atom of KA(K) on which the engine and the oracle disagree.
fn mismatches(kb: &KnowledgeBase, consistency: ConsistencyScope) -> Vec<String> {
    let oracle = Oracle::new(kb, &BTreeSet::new()).unwrap();
    let model = oracle.well_founded_model().unwrap();
    let engine = Engine::new(kb, EngineConfig { consistency, ..Default::default() }).unwrap();
    let mut out = Vec::new();
    for atom in oracle.k_atoms().clone() {
        let expected = model.truth(&atom);
        let got = engine.answer(&atom.to_atom()).unwrap().value();
        if got != expected {
            out.push(format!("{atom}: engine {got}, oracle {expected}"));
        }
    }
    out
}

#[test]
fn fixtures_agree_with_oracle() {
    for name in fixtures::safe_names() {
        assert_eq!(mismatches(&fixtures::kb(name), ConsistencyScope::Relevant), Vec::<String>::new(), "{name}");
    }
}

#[test]
fn random_kbs_agree_with_oracle() {
    let mut bad = Vec::new();
    for seed in 0..300 {
        let kb = generate::random_kb(seed);
        let m = mismatches(&kb, ConsistencyScope::Global);
        if !m.is_empty() {
            bad.push(format!("seed {seed}: {m:?}"));
        }
    }
    assert!(bad.is_empty(), "{}\n", bad.join("\n"));
}

#[test]
fn random_programs_agree_with_oracle() {
    for seed in 0..200 {
        let kb = generate::random_program(seed);
        assert_eq!(mismatches(&kb, ConsistencyScope::Relevant), Vec::<String>::new(), "seed {seed}");
    }
}

/// Under the default scope, disagreements are confined to knowledge bases
/// whose inconsistency lies outside the query's component.
#[test]
fn relevant_scope_only_differs_on_inconsistent_kbs() {
    for seed in 0..300 {
        let kb = generate::random_kb(seed);
        if !mismatches(&kb, ConsistencyScope::Relevant).is_empty() {
            let engine = Engine::new(&kb, EngineConfig::default()).unwrap();
            assert!(engine.globally_inconsistent().unwrap(), "seed {seed}");
        }
    }
}
