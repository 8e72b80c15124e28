//! Seeded random knowledge bases.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mknf::{Atom, ClassExpression as C, KnowledgeBase, MknfRule, OntologyAxiom, Signature, Term};

const CONCEPTS: [&str; 4] = ["a0", "a1", "a2", "a3"];
const ROLES: [&str; 2] = ["r0", "r1"];
const UNARY_NON_DL: [&str; 2] = ["q0", "q1"];

fn ind(rng: &mut ChaCha8Rng, n: usize) -> String {
    format!("i{}", rng.gen_range(0..n))
}

fn pick<'a>(rng: &mut ChaCha8Rng, xs: &[&'a str]) -> &'a str {
    xs.choose(rng).expect("non-empty")
}

fn named(rng: &mut ChaCha8Rng) -> C {
    C::named(pick(rng, &CONCEPTS))
}

fn axiom(rng: &mut ChaCha8Rng, n: usize) -> OntologyAxiom {
    let r = pick(rng, &ROLES);
    match rng.gen_range(0..9) {
        0 | 1 => OntologyAxiom::Subclass(named(rng), named(rng)),
        2 => OntologyAxiom::Subclass(named(rng), C::neg(named(rng))),
        3 => {
            let a = rng.gen_range(0..CONCEPTS.len());
            let b = (a + rng.gen_range(1..CONCEPTS.len())) % CONCEPTS.len();
            OntologyAxiom::Equiv(C::named(CONCEPTS[a]), C::neg(C::named(CONCEPTS[b])))
        }
        4 => {
            let filler = if rng.gen_bool(0.5) { C::Top } else { named(rng) };
            OntologyAxiom::Subclass(C::exists(r, filler), named(rng))
        }
        5 => OntologyAxiom::Subclass(named(rng), C::exists(r, named(rng))),
        6 => OntologyAxiom::Subclass(named(rng), C::at_most(1, r, C::Top)),
        7 => {
            let c = match rng.gen_range(0..3) {
                0 => named(rng),
                1 => C::exists(r, C::Top),
                _ => C::at_most(1, r, C::Top),
            };
            OntologyAxiom::InstanceOf(ind(rng, n).as_str().into(), c)
        }
        _ => OntologyAxiom::RoleFact(r.into(), ind(rng, n).as_str().into(), ind(rng, n).as_str().into()),
    }
}

fn var(name: &str) -> Term {
    Term::var(name)
}

/// A body literal over the variables `vars`, for a random predicate.
fn literal(rng: &mut ChaCha8Rng, vars: &[&str]) -> Atom {
    let x = || Term::var("X");
    match rng.gen_range(0..3) {
        0 => Atom::new(pick(rng, &CONCEPTS), vec![var(pick(rng, vars))]),
        1 => Atom::new(pick(rng, &UNARY_NON_DL), vec![var(pick(rng, vars))]),
        _ if vars.len() == 2 => {
            let (a, b) = if rng.gen_bool(0.5) { ("X", "Y") } else { ("Y", "X") };
            Atom::new(pick(rng, &ROLES), vec![var(a), var(b)])
        }
        _ => Atom::new(pick(rng, &ROLES), vec![x(), x()]),
    }
}

fn dl_rule(rng: &mut ChaCha8Rng) -> MknfRule {
    let binary = rng.gen_bool(0.3);
    let vars: &[&str] = if binary { &["X", "Y"] } else { &["X"] };
    let mut k_body = vec![if binary {
        Atom::new("e", vec![var("X"), var("Y")])
    } else {
        Atom::new("g", vec![var("X")])
    }];
    let mut not_body = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let l = literal(rng, vars);
        if rng.gen_bool(0.5) {
            not_body.push(l);
        } else {
            k_body.push(l);
        }
    }
    let head = match rng.gen_range(0..3) {
        0 => Atom::new(pick(rng, &UNARY_NON_DL), vec![var("X")]),
        1 if binary => Atom::new(pick(rng, &ROLES), vec![var("X"), var("Y")]),
        _ => Atom::new(pick(rng, &CONCEPTS), vec![var(pick(rng, vars))]),
    };
    MknfRule::new(head, k_body, not_body)
}

fn fact(rng: &mut ChaCha8Rng, n: usize) -> MknfRule {
    let c = |rng: &mut ChaCha8Rng| Term::constant(&ind(rng, n));
    let head = match rng.gen_range(0..6) {
        0 | 1 => Atom::new("g", vec![c(rng)]),
        2 => Atom::new("e", vec![c(rng), c(rng)]),
        3 => Atom::new(pick(rng, &CONCEPTS), vec![c(rng)]),
        4 => Atom::new(pick(rng, &ROLES), vec![c(rng), c(rng)]),
        _ => Atom::new(pick(rng, &UNARY_NON_DL), vec![c(rng)]),
    };
    MknfRule::fact(head)
}

/// A DL-safe knowledge base with at most 5 individuals, 8 rules (facts
/// included) and 6 axioms, over concepts `a0..a3` and roles `r0, r1`.
pub fn random_kb(seed: u64) -> KnowledgeBase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=5);
    let ontology: Vec<OntologyAxiom> = (0..rng.gen_range(0..=6)).map(|_| axiom(&mut rng, n)).collect();
    let rule_count = rng.gen_range(1..=8);
    let fact_count = rng.gen_range(1..=rule_count);
    let mut program: Vec<MknfRule> = (0..fact_count).map(|_| fact(&mut rng, n)).collect();
    program.extend((fact_count..rule_count).map(|_| dl_rule(&mut rng)));
    let declared = Signature {
        concepts: CONCEPTS.iter().map(|s| s.to_string()).collect(),
        roles: ROLES.iter().map(|s| s.to_string()).collect(),
    };
    KnowledgeBase::new(ontology, declared, program).expect("generated knowledge bases are well-formed")
}

/// A normal program (no ontology) over at most 4 individuals.
pub fn random_program(seed: u64) -> KnowledgeBase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let preds = ["p0", "p1", "p2", "p3"];
    let props = ["w0", "w1"];
    let mut program = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        program.push(MknfRule::fact(Atom::new("g", vec![Term::constant(&ind(&mut rng, n))])));
    }
    for _ in 0..rng.gen_range(0..=2) {
        program.push(MknfRule::fact(Atom::new(pick(&mut rng, &preds), vec![Term::constant(&ind(&mut rng, n))])));
    }
    for _ in 0..rng.gen_range(1..=8) {
        let unary = |rng: &mut ChaCha8Rng| -> Atom {
            if rng.gen_bool(0.25) {
                Atom::new(pick(rng, &props), vec![])
            } else {
                Atom::new(pick(rng, &preds), vec![Term::var("X")])
            }
        };
        let head = unary(&mut rng);
        let mut k_body = vec![Atom::new("g", vec![Term::var("X")])];
        let mut not_body = Vec::new();
        for _ in 0..rng.gen_range(0..=3) {
            let l = unary(&mut rng);
            if rng.gen_bool(0.5) {
                not_body.push(l);
            } else {
                k_body.push(l);
            }
        }
        if rng.gen_bool(0.2) {
            // A propositional rule with no guard at all.
            k_body.retain(|a| a.args.is_empty());
            not_body.retain(|a| a.args.is_empty());
            let head = Atom::new(pick(&mut rng, &props), vec![]);
            program.push(MknfRule::new(head, k_body, not_body));
        } else {
            program.push(MknfRule::new(head, k_body, not_body));
        }
    }
    KnowledgeBase::new(Vec::new(), Signature::default(), program).expect("generated programs are well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_kbs_are_dl_safe_and_deterministic() {
        for seed in 0..200 {
            let kb = random_kb(seed);
            assert!(kb.dl_safety_violations().is_empty(), "seed {seed}");
            assert!(kb.individuals().len() <= 5);
            assert!(kb.program.len() <= 8);
            assert!(kb.ontology.len() <= 6);
            assert_eq!(kb, random_kb(seed));
            let p = random_program(seed);
            assert!(p.dl_safety_violations().is_empty(), "seed {seed}");
            assert!(p.ontology.is_empty());
        }
    }
}
