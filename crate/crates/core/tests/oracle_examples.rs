use mknf::oracle::{well_founded_model, Oracle};
use mknf::{AtomSet, GroundAtom, TruthValue};
use mknf_testkit::{fixtures, generate, wfs};
use std::collections::BTreeSet;

fn g(p: &str, args: &[&str]) -> GroundAtom {
    GroundAtom::new(p, args)
}

#[test]
fn insurance_premiums() {
    let m = well_founded_model(&fixtures::kb("insurance")).unwrap();
    assert_eq!(m.truth(&g("surcharge", &["john"])), TruthValue::True);
    assert_eq!(m.truth(&g("surcharge", &["bill"])), TruthValue::False);
    assert_eq!(m.truth(&g("surcharge", &["bob"])), TruthValue::False);
    assert_eq!(m.truth(&g("surcharge", &["ann"])), TruthValue::True);
    assert_eq!(m.truth(&g("discount", &["bob"])), TruthValue::True);
    assert_eq!(m.truth(&g("discount", &["bill"])), TruthValue::False);
    assert!(!m.inconsistent);
}

#[test]
fn surcharge_follows_from_the_first_tu_step() {
    let kb = fixtures::kb("insurance");
    let o = Oracle::new(&kb, &BTreeSet::new()).unwrap();
    let tu0 = o.k_atoms_star().clone();
    let t1 = o.gamma(&tu0).unwrap();
    let tu1 = o.gamma_prime(&AtomSet::new()).unwrap();
    assert!(tu1.contains(&g("surcharge", &["john"])));
    assert!(t1.is_subset(&tu1));
}

#[test]
fn callback_examples() {
    let m = well_founded_model(&fixtures::kb("callback")).unwrap();
    for a in ["p", "first", "second", "third"] {
        assert_eq!(m.truth(&g(a, &["callback"])), TruthValue::True, "{a}");
    }
    let m = well_founded_model(&fixtures::kb("callback_not")).unwrap();
    assert_eq!(m.truth(&g("third", &["callback"])), TruthValue::True);
    assert_eq!(m.truth(&g("fourth", &["callback"])), TruthValue::False);
}

#[test]
fn object_example() {
    let m = well_founded_model(&fixtures::kb("object")).unwrap();
    assert_eq!(m.truth(&g("c", &["object"])), TruthValue::False);
    assert_eq!(m.truth(&g("b", &["object"])), TruthValue::True);
}

#[test]
fn customs_example() {
    let m = well_founded_model(&fixtures::kb("customs")).unwrap();
    assert_eq!(m.truth(&g("inspect", &["s1"])), TruthValue::False);
    assert_eq!(m.truth(&g("inspect", &["s2"])), TruthValue::False);
    assert_eq!(m.truth(&g("inspect", &["s3"])), TruthValue::True);
    assert_eq!(m.truth(&g("safeCountry", &["atlantis"])), TruthValue::Undefined);
    assert!(!m.inconsistent);
}

#[test]
fn loop_example() {
    let m = well_founded_model(&fixtures::kb("loop")).unwrap();
    assert_eq!(m.truth(&g("p", &["a"])), TruthValue::Undefined);
}

#[test]
fn agrees_with_unfounded_set_wfs() {
    for seed in 0..300 {
        let kb = generate::random_program(seed);
        let m = well_founded_model(&kb).unwrap();
        let w = wfs::well_founded(&kb);
        assert_eq!(m.true_atoms, w.true_atoms, "seed {seed}");
        assert_eq!(m.undefined_atoms(), w.undefined, "seed {seed}");
    }
}

#[test]
fn random_kbs_terminate() {
    let mut inconsistent = 0;
    for seed in 0..300 {
        let kb = generate::random_kb(seed);
        let m = well_founded_model(&kb).unwrap();
        if m.inconsistent { inconsistent += 1; }
        assert!(m.sequence.len() <= 2 * m.star_atoms + 2);
    }
    eprintln!("inconsistent: {inconsistent}");
}
