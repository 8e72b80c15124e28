//! Brute-force search for small finite models of an ALCQ ontology.
//!
//! Interpretations over domains `{0, .., n-1}` with `n ≤ 4` are enumerated
//! exhaustively: first the mapping of individuals to elements (no unique-name
//! assumption), then role extensions, then concept extensions. Extensions are
//! bitmasks, so a domain of four elements needs 16 bits per role.

use std::collections::BTreeMap;

use mknf::tableau::EntailmentQuery;
use mknf::{ClassExpression, Individual, OntologyAxiom, Signature};

pub const MAX_DOMAIN: usize = 4;

struct Interp<'a> {
    n: usize,
    concepts: &'a BTreeMap<String, u32>,
    roles: &'a BTreeMap<String, u32>,
}

impl Interp<'_> {
    fn all(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    fn edge(&self, role: &str, x: usize, y: usize) -> bool {
        self.roles.get(role).is_some_and(|m| m & (1 << (x * self.n + y)) != 0)
    }

    fn eval(&self, c: &ClassExpression) -> u32 {
        use ClassExpression as C;
        match c {
            C::Top => self.all(),
            C::Bottom => 0,
            C::Named(a) => self.concepts.get(a).copied().unwrap_or(0),
            C::Neg(c) => self.all() & !self.eval(c),
            C::And(cs) => cs.iter().fold(self.all(), |m, c| m & self.eval(c)),
            C::Or(cs) => cs.iter().fold(0, |m, c| m | self.eval(c)),
            C::Exists(r, c) => self.count_filter(r, c, |k| k >= 1),
            C::Forall(r, c) => self.all() & !self.count_filter(r, &C::Neg(c.clone()), |k| k >= 1),
            C::AtLeast(n, r, c) => self.count_filter(r, c, |k| k >= *n as usize),
            C::AtMost(n, r, c) => self.count_filter(r, c, |k| k <= *n as usize),
        }
    }

    fn count_filter(&self, role: &str, filler: &ClassExpression, keep: impl Fn(usize) -> bool) -> u32 {
        let f = self.eval(filler);
        let mut out = 0;
        for x in 0..self.n {
            let k = (0..self.n).filter(|&y| f & (1 << y) != 0 && self.edge(role, x, y)).count();
            if keep(k) {
                out |= 1 << x;
            }
        }
        out
    }
}

/// An extra requirement on a candidate model, used to encode a negated query.
#[derive(Debug, Clone)]
enum Requirement {
    NotIn(Individual, ClassExpression),
    NoEdge(String, Individual, Individual),
    Edge(String, Individual, Individual),
    Distinct(Individual, Individual),
}

fn satisfied(
    axioms: &[OntologyAxiom],
    extra: Option<&Requirement>,
    i: &Interp<'_>,
    map: &BTreeMap<&Individual, usize>,
) -> bool {
    let bit = |ind: &Individual| 1u32 << map[ind];
    let holds = |ax: &OntologyAxiom| match ax {
        OntologyAxiom::Subclass(a, b) => i.eval(a) & !i.eval(b) == 0,
        OntologyAxiom::Equiv(a, b) => i.eval(a) == i.eval(b),
        OntologyAxiom::InstanceOf(x, c) => i.eval(c) & bit(x) != 0,
        OntologyAxiom::RoleFact(r, x, y) => i.edge(r, map[x], map[y]),
        OntologyAxiom::Equal(x, y) => map[x] == map[y],
        OntologyAxiom::Different(x, y) => map[x] != map[y],
    };
    axioms.iter().all(holds)
        && match extra {
            None => true,
            Some(Requirement::NotIn(x, c)) => i.eval(c) & bit(x) == 0,
            Some(Requirement::NoEdge(r, x, y)) => !i.edge(r, map[x], map[y]),
            Some(Requirement::Edge(r, x, y)) => i.edge(r, map[x], map[y]),
            Some(Requirement::Distinct(x, y)) => map[x] != map[y],
        }
}

fn search(axioms: &[OntologyAxiom], extra: Option<&Requirement>, max_domain: usize) -> bool {
    let sig = Signature::from_axioms(&Signature::default(), axioms);
    let mut concept_names: Vec<String> = sig.concepts.iter().cloned().collect();
    let mut role_names: Vec<String> = sig.roles.iter().cloned().collect();
    let mut inds: Vec<Individual> = axioms.iter().flat_map(|a| a.individuals()).cloned().collect();
    match extra {
        Some(Requirement::NotIn(x, c)) => {
            inds.push(x.clone());
            let mut cs = Default::default();
            let mut rs = Default::default();
            c.collect_names(&mut cs, &mut rs);
            concept_names.extend(cs);
            role_names.extend(rs);
        }
        Some(Requirement::NoEdge(r, x, y) | Requirement::Edge(r, x, y)) => {
            inds.extend([x.clone(), y.clone()]);
            role_names.push(r.clone());
        }
        Some(Requirement::Distinct(x, y)) => inds.extend([x.clone(), y.clone()]),
        None => {}
    }
    concept_names.sort();
    concept_names.dedup();
    role_names.sort();
    role_names.dedup();
    inds.sort();
    inds.dedup();

    for n in 1..=max_domain.min(MAX_DOMAIN) {
        let role_space = 1u64 << (n * n);
        let concept_space = 1u64 << n;
        let maps = (n as u64).pow(inds.len() as u32);
        for code in 0..maps {
            let mut c = code;
            let mut map = BTreeMap::new();
            for ind in &inds {
                map.insert(ind, (c % n as u64) as usize);
                c /= n as u64;
            }
            let total_roles = role_space.pow(role_names.len() as u32);
            for rcode in 0..total_roles {
                let mut rc = rcode;
                let mut roles = BTreeMap::new();
                for r in &role_names {
                    roles.insert(r.clone(), (rc % role_space) as u32);
                    rc /= role_space;
                }
                let total_concepts = concept_space.pow(concept_names.len() as u32);
                for ccode in 0..total_concepts {
                    let mut cc = ccode;
                    let mut concepts = BTreeMap::new();
                    for a in &concept_names {
                        concepts.insert(a.clone(), (cc % concept_space) as u32);
                        cc /= concept_space;
                    }
                    let interp = Interp { n, concepts: &concepts, roles: &roles };
                    if satisfied(axioms, extra, &interp, &map) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Whether `axioms` have a model with at most `max_domain` elements.
pub fn has_model(axioms: &[OntologyAxiom], max_domain: usize) -> bool {
    search(axioms, None, max_domain)
}

/// Entailment up to the domain bound: `true` iff no model of at most
/// `max_domain` elements violates `query`. Exact whenever a countermodel,
/// if one exists, has a model of that size.
pub fn entails(axioms: &[OntologyAxiom], query: &EntailmentQuery, max_domain: usize) -> bool {
    let req = match query {
        EntailmentQuery::Positive(a) if a.args.len() == 1 => {
            Requirement::NotIn(a.args[0].clone(), ClassExpression::named(&a.predicate))
        }
        EntailmentQuery::Negative(a) if a.args.len() == 1 => Requirement::NotIn(
            a.args[0].clone(),
            ClassExpression::neg(ClassExpression::named(&a.predicate)),
        ),
        EntailmentQuery::Positive(a) => Requirement::NoEdge(a.predicate.clone(), a.args[0].clone(), a.args[1].clone()),
        EntailmentQuery::Negative(a) => Requirement::Edge(a.predicate.clone(), a.args[0].clone(), a.args[1].clone()),
        EntailmentQuery::Equality(x, y) => Requirement::Distinct(x.clone(), y.clone()),
    };
    !search(axioms, Some(&req), max_domain)
}
