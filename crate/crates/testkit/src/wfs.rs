//! Well-founded model of a normal logic program via unfounded sets.
//!
//! The interpretation is refined by alternately adding the atoms derivable
//! in one step and marking the greatest unfounded set false, until nothing
//! changes. Grounding is done here as well, without the library's grounder.

use std::collections::{BTreeMap, BTreeSet};

use mknf::{AtomSet, GroundAtom, Individual, KnowledgeBase, Term};

struct GroundRule {
    head: GroundAtom,
    pos: Vec<GroundAtom>,
    neg: Vec<GroundAtom>,
}

fn instantiate(t: &[Term], env: &BTreeMap<String, Individual>) -> Vec<Individual> {
    t.iter()
        .map(|t| match t {
            Term::Const(c) => c.clone(),
            Term::Var(v) => env[v].clone(),
        })
        .collect()
}

fn ground_rules(kb: &KnowledgeBase) -> Vec<GroundRule> {
    let universe: Vec<Individual> = kb.individuals().into_iter().collect();
    let mut out = Vec::new();
    for rule in &kb.program {
        let mut vars: Vec<String> = Vec::new();
        for a in rule.atoms() {
            for t in &a.args {
                if let Term::Var(v) = t {
                    if !vars.contains(v) {
                        vars.push(v.clone());
                    }
                }
            }
        }
        let total = universe.len().pow(vars.len() as u32);
        for mut code in 0..total {
            let mut env = BTreeMap::new();
            for v in &vars {
                env.insert(v.clone(), universe[code % universe.len()].clone());
                code /= universe.len();
            }
            let g = |a: &mknf::Atom| GroundAtom { predicate: a.predicate.clone(), args: instantiate(&a.args, &env) };
            out.push(GroundRule {
                head: g(&rule.head),
                pos: rule.k_body.iter().map(g).collect(),
                neg: rule.not_body.iter().map(g).collect(),
            });
        }
    }
    out
}

/// Three-valued result: `true_atoms` and `undefined` are disjoint; every
/// other atom of the ground program is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wfs {
    pub atoms: AtomSet,
    pub true_atoms: AtomSet,
    pub undefined: AtomSet,
}

/// Computes the well-founded model of the rules of `kb`, ignoring any ontology.
pub fn well_founded(kb: &KnowledgeBase) -> Wfs {
    let rules = ground_rules(kb);
    let mut atoms = AtomSet::new();
    for r in &rules {
        atoms.insert(r.head.clone());
        atoms.extend(r.pos.iter().cloned());
        atoms.extend(r.neg.iter().cloned());
    }
    let mut t = AtomSet::new();
    let mut f = AtomSet::new();
    loop {
        let body_false = |r: &GroundRule, t: &AtomSet, f: &AtomSet| {
            r.pos.iter().any(|a| f.contains(a)) || r.neg.iter().any(|a| t.contains(a))
        };
        let mut new_t = t.clone();
        for r in &rules {
            if r.pos.iter().all(|a| t.contains(a)) && r.neg.iter().all(|a| f.contains(a)) {
                new_t.insert(r.head.clone());
            }
        }
        // Atoms with some support that avoids false literals and unfounded atoms.
        let mut founded: BTreeSet<GroundAtom> = BTreeSet::new();
        loop {
            let mut grew = false;
            for r in &rules {
                if !founded.contains(&r.head)
                    && !body_false(r, &t, &f)
                    && r.pos.iter().all(|a| founded.contains(a))
                {
                    founded.insert(r.head.clone());
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        let new_f: AtomSet = atoms.difference(&founded).cloned().collect();
        if new_t == t && new_f == f {
            break;
        }
        t = new_t;
        f = new_f;
    }
    let undefined = atoms.iter().filter(|a| !t.contains(*a) && !f.contains(*a)).cloned().collect();
    Wfs { atoms, true_atoms: t, undefined }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mknf::parser::{load, SourceBundle};

    fn program(text: &str) -> KnowledgeBase {
        load(&SourceBundle { rules_text: text.into(), ontology_text: String::new() }).kb.unwrap()
    }

    #[test]
    fn odd_loop_undefined() {
        let w = well_founded(&program("p(a) :- not p(a)."));
        assert_eq!(w.undefined, [GroundAtom::new("p", &["a"])].into());
    }

    #[test]
    fn stratified_program() {
        let w = well_founded(&program("q(a). r(X) :- q(X), not s(X). s(b) :- q(b)."));
        assert!(w.true_atoms.contains(&GroundAtom::new("r", &["a"])));
        assert!(w.undefined.is_empty());
    }

    #[test]
    fn positive_loop_is_false() {
        let w = well_founded(&program("p :- q. q :- p. r :- not p."));
        assert_eq!(w.true_atoms, [GroundAtom::new("r", &[])].into());
    }

    #[test]
    fn win_move() {
        let w = well_founded(&program(
            "move(a,b). move(b,a). move(b,c). move(c,d).\nwin(X) :- move(X,Y), not win(Y).",
        ));
        assert!(w.true_atoms.contains(&GroundAtom::new("win", &["c"])));
        assert!(!w.true_atoms.contains(&GroundAtom::new("win", &["d"])));
        assert!(!w.undefined.contains(&GroundAtom::new("win", &["d"])));
        assert!(w.undefined.contains(&GroundAtom::new("win", &["a"])));
        assert!(w.undefined.contains(&GroundAtom::new("win", &["b"])));
    }
}
