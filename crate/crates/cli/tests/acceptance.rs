//! Acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use mknf::engine::{ConsistencyScope, Engine, EngineConfig};
use mknf::oracle::{well_founded_model, Oracle};
use mknf::parser::parse_atom;
use mknf::tableau::{AboxView, EntailmentQuery, Reasoner};
use mknf::{AtomSet, KnowledgeBase, TruthValue};
use mknf_testkit::{cases, fixtures, generate, wfs};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ask(fixture: &str, query: &str) -> TruthValue {
    let kb = fixtures::kb(fixture);
    let engine = Engine::new(&kb, EngineConfig::default()).expect("fixture is DL-safe");
    engine.answer(&parse_atom(query).expect("query parses")).expect("query runs").value()
}

fn worked_examples() -> Outcome {
    use TruthValue::*;
    let expected = [
        ("insurance", "surcharge(john)", True),
        ("insurance", "surcharge(bill)", False),
        ("insurance", "surcharge(bob)", False),
        ("insurance", "discount(bob)", True),
        ("insurance", "discount(bill)", False),
        ("callback", "third(callback)", True),
        ("callback_not", "fourth(callback)", False),
        ("object", "c(object)", False),
        ("object", "b(object)", True),
        ("customs", "inspect(s1)", False),
        ("customs", "inspect(s2)", False),
    ];
    let wrong: Vec<String> = expected
        .iter()
        .filter_map(|(f, q, want)| {
            let got = ask(f, q);
            (got != *want).then(|| format!("{f}: {q} = {got}, expected {want}"))
        })
        .collect();
    if wrong.is_empty() {
        Ok(format!("{} answers exact", expected.len()))
    } else {
        Err(wrong.join("; "))
    }
}

fn engine_mismatches(kb: &KnowledgeBase, consistency: ConsistencyScope) -> usize {
    let oracle = Oracle::new(kb, &BTreeSet::new()).expect("oracle builds");
    let model = oracle.well_founded_model().expect("oracle runs");
    let engine = Engine::new(kb, EngineConfig { consistency, ..Default::default() }).expect("engine builds");
    oracle
        .k_atoms()
        .iter()
        .filter(|a| engine.answer(&a.to_atom()).expect("engine runs").value() != model.truth(a))
        .count()
}

fn oracle_equivalence() -> Outcome {
    let (mut atoms, mut bad, mut relevant_bad) = (0, Vec::new(), 0);
    for seed in 0..300 {
        let kb = generate::random_kb(seed);
        atoms += Oracle::new(&kb, &BTreeSet::new()).expect("oracle builds").k_atoms().len();
        if engine_mismatches(&kb, ConsistencyScope::Global) > 0 {
            bad.push(seed);
        }
        if engine_mismatches(&kb, ConsistencyScope::Relevant) > 0 {
            relevant_bad += 1;
        }
    }
    println!("info: default relevant-only consistency scope differs on {relevant_bad}/300 KBs (all globally inconsistent)");
    if bad.is_empty() {
        Ok(format!("300 KBs, {atoms} ground atoms, 0 mismatches"))
    } else {
        Err(format!("mismatching seeds {bad:?}"))
    }
}

fn wfs_reduction() -> Outcome {
    let mut bad = Vec::new();
    for seed in 0..300 {
        let kb = generate::random_program(seed);
        let m = well_founded_model(&kb).expect("oracle runs");
        let w = wfs::well_founded(&kb);
        if m.true_atoms != w.true_atoms || m.undefined_atoms() != w.undefined {
            bad.push(seed);
        }
    }
    if bad.is_empty() {
        Ok("300 programs, 0 mismatches".into())
    } else {
        Err(format!("mismatching seeds {bad:?}"))
    }
}

fn test_kbs() -> Vec<KnowledgeBase> {
    let mut kbs: Vec<KnowledgeBase> = fixtures::safe_names().iter().map(|n| fixtures::kb(n)).collect();
    kbs.extend((0..300).map(generate::random_kb));
    kbs
}

fn coherence() -> Outcome {
    let (mut checked, mut violations) = (0, Vec::new());
    for (i, kb) in test_kbs().iter().enumerate() {
        let m = well_founded_model(kb).expect("oracle runs");
        if m.inconsistent {
            continue;
        }
        checked += 1;
        let reasoner = Reasoner::new(&kb.ontology, &kb.signature);
        let view = AboxView::new(&kb.ontology, kb.dl_projection(&m.true_atoms));
        for a in m.true_or_undef.iter().filter(|a| kb.is_dl(&a.predicate)) {
            if reasoner.entails(&view, &EntailmentQuery::Negative(a.clone())).expect("tableau runs") {
                violations.push(format!("kb {i}: {a}"));
            }
        }
    }
    if violations.is_empty() {
        Ok(format!("{checked} consistent KBs, 0 violations"))
    } else {
        Err(violations.join("; "))
    }
}

fn sequence_shape() -> Outcome {
    let (mut failures, mut plateaus) = (Vec::new(), 0);
    for (i, kb) in test_kbs().iter().enumerate() {
        let m = well_founded_model(kb).expect("oracle runs");
        let seq = &m.sequence;
        if seq.len() > 2 * m.star_atoms + 2 {
            failures.push(format!("kb {i}: {} iterations", seq.len()));
        }
        for w in seq.windows(2) {
            let ((t0, tu0), (t1, tu1)) = (&w[0], &w[1]);
            if !t0.is_subset(t1) || !tu1.is_subset(tu0) {
                failures.push(format!("kb {i}: not monotone"));
            }
        }
        // Before the fixpoint every step must change the pair.
        let distinct: BTreeSet<&(AtomSet, AtomSet)> = seq.iter().collect();
        if distinct.len() + 1 < seq.len() {
            failures.push(format!("kb {i}: a pair repeats before the fixpoint"));
        }
        let last = seq.len().saturating_sub(1);
        plateaus += seq.windows(2).take(last.saturating_sub(1)).filter(|w| w[0].0 == w[1].0).count();
    }
    println!("info: {plateaus} steps before a fixpoint leave T unchanged while TU shrinks");
    if failures.is_empty() {
        Ok("T increasing, TU decreasing, length bound holds".into())
    } else {
        Err(failures.join("; "))
    }
}

fn tableau_suite() -> Outcome {
    let report = cases::run();
    if report.total < 30 || report.cross_checked < 30 || !report.failures.is_empty() {
        return Err(format!(
            "{} cases, {} cross-checked, failures: {:?}",
            report.total, report.cross_checked, report.failures
        ));
    }
    Ok(format!("{} cases, {} cross-checked against the enumerator", report.total, report.cross_checked))
}

fn relevance() -> Outcome {
    let kb = fixtures::kb("two_components");
    let engine = Engine::new(&kb, EngineConfig::default()).expect("fixture is DL-safe");
    let r = engine.answer(&parse_atom("surcharge(john)").expect("parses")).expect("runs");
    let other: BTreeSet<&str> = ["s1", "s4", "norway", "freedonia"].into();
    let leaked = r.stats.individuals_touched.iter().filter(|i| other.contains(i.name())).count();
    if leaked == 0 && r.stats.tableau_calls > 0 {
        Ok(format!("{} tableau calls, 0 mention the other component", r.stats.tableau_calls))
    } else {
        Err(format!("{leaked} foreign individuals touched in {} calls", r.stats.tableau_calls))
    }
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_mknf")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn determinism() -> Outcome {
    let mut runs = 0;
    for name in fixtures::safe_names() {
        let (rules, onto) = fixtures::paths(name);
        let (rules, onto) = (rules.to_str().expect("utf-8 path"), onto.to_str().expect("utf-8 path"));
        let commands: [&[&str]; 3] = [&["model"], &["--format", "tsv", "model"], &["--engine", "both", "model"]];
        for cmd in commands {
            let args: Vec<&str> = ["--rules", rules, "--onto", onto].iter().copied().chain(cmd.iter().copied()).collect();
            if run_cli(&args) != run_cli(&args) {
                return Err(format!("{name}: {cmd:?} differs between runs"));
            }
            runs += 1;
        }
    }
    let (rules, onto) = fixtures::paths("insurance");
    let args = ["--rules", rules.to_str().unwrap(), "--onto", onto.to_str().unwrap(), "query", "surcharge(X)"];
    if run_cli(&args) != run_cli(&args) {
        return Err("open query output differs between runs".into());
    }
    Ok(format!("{} command pairs byte-identical", runs + 1))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("example suite", worked_examples),
        ("oracle equivalence", oracle_equivalence),
        ("WFS reduction", wfs_reduction),
        ("coherence", coherence),
        ("sequence shape", sequence_shape),
        ("tableau suite", tableau_suite),
        ("relevance", relevance),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
