//! Which ground rule instances can ever fire, and which individuals a query
//! depends on.
//!
//! Both are computed without the tableau. An instance is *possible* when its
//! positive non-DL body atoms are possible; DL body atoms are assumed
//! possible because the ontology might entail them. Two individuals are
//! linked when they share an ABox assertion or a possible rule instance.
//! Non-DL atoms are copied across linked individuals, which over-approximates
//! the equality part of the ontology consequences.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::model::{Atom, AtomSet, GroundAtom, Individual, KnowledgeBase, OntologyAxiom, Substitution, Term};

/// Why an individual joined the relevant set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Query,
    RoleEdge,
    EqualityMerge,
    NonDlGuard,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Query => "query",
            Provenance::RoleEdge => "role-edge",
            Provenance::EqualityMerge => "equality-merge",
            Provenance::NonDlGuard => "non-DL-guard",
        })
    }
}

/// The individuals a query depends on.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelevantSet {
    pub individuals: BTreeSet<Individual>,
    pub provenance: BTreeMap<Individual, Provenance>,
    /// Whether propositional (argument-free) atoms are relevant.
    pub propositional: bool,
}

impl RelevantSet {
    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    pub fn contains_all<'a>(&self, inds: impl IntoIterator<Item = &'a Individual>) -> bool {
        inds.into_iter().all(|i| self.individuals.contains(i))
    }
}

/// One possible ground instance of a rule of `K*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub rule: usize,
    pub head: GroundAtom,
    pub pos: Vec<GroundAtom>,
    /// `not` atoms of the original rule.
    pub neg: Vec<GroundAtom>,
    /// The `not NP(t⃗)` atom added by `K*`, if the head is a DL atom.
    pub guard: Option<GroundAtom>,
}

impl Instance {
    pub fn atoms(&self) -> impl Iterator<Item = &GroundAtom> {
        std::iter::once(&self.head).chain(&self.pos).chain(&self.neg).chain(&self.guard)
    }

    fn individuals(&self) -> BTreeSet<&Individual> {
        self.atoms().flat_map(|a| a.args.iter()).collect()
    }

    fn propositional(&self) -> bool {
        self.atoms().any(|a| a.args.is_empty())
    }
}

type Node = Option<Individual>;

/// Possible instances and the link graph between individuals.
#[derive(Debug, Clone, Default)]
pub struct Possibility {
    pub instances: Vec<Instance>,
    pub non_dl_atoms: AtomSet,
    links: BTreeMap<Node, BTreeMap<Node, Provenance>>,
}

fn join(
    body: &[&Atom],
    index: &BTreeMap<&str, Vec<&GroundAtom>>,
    subst: Substitution,
    out: &mut Vec<Substitution>,
) {
    let Some((first, rest)) = body.split_first() else {
        out.push(subst);
        return;
    };
    for g in index.get(first.predicate.as_str()).into_iter().flatten() {
        if let Some(s) = first.unify(g, &subst) {
            join(rest, index, s, out);
        }
    }
}

struct UnionFind(BTreeMap<Node, Node>);

impl UnionFind {
    fn find(&mut self, x: &Node) -> Node {
        let parent = self.0.get(x).cloned().unwrap_or_else(|| x.clone());
        if &parent == x {
            return parent;
        }
        let root = self.find(&parent);
        self.0.insert(x.clone(), root.clone());
        root
    }

    fn union(&mut self, x: &Node, y: &Node) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.0.insert(rx, ry);
        }
    }
}

impl Possibility {
    /// Analyses the transformed knowledge base `star` (the result of
    /// [`KnowledgeBase::transform_star`]).
    pub fn new(star: &KnowledgeBase) -> Self {
        let np_preds: BTreeSet<&str> = star.np_map.values().map(String::as_str).collect();
        let mut p = Possibility::default();
        let mut possible = AtomSet::new();
        loop {
            let mut index: BTreeMap<&str, Vec<&GroundAtom>> = BTreeMap::new();
            for a in &possible {
                index.entry(a.predicate.as_str()).or_default().push(a);
            }
            let mut instances = Vec::new();
            for (ri, rule) in star.program.iter().enumerate() {
                let guards: Vec<&Atom> = rule.k_body.iter().filter(|a| !star.is_dl(&a.predicate)).collect();
                let mut substs = Vec::new();
                join(&guards, &index, Substitution::new(), &mut substs);
                instances.extend(substs.iter().map(|s| instance(ri, rule, s, &np_preds)));
            }
            drop(index);

            let mut links: BTreeMap<Node, BTreeMap<Node, Provenance>> = BTreeMap::new();
            let mut link = |x: Node, y: Node, why: Provenance| {
                links.entry(x.clone()).or_default().entry(y.clone()).or_insert(why);
                links.entry(y).or_default().entry(x).or_insert(why);
            };
            for ax in &star.ontology {
                match ax {
                    OntologyAxiom::RoleFact(_, a, b) => link(Some(a.clone()), Some(b.clone()), Provenance::RoleEdge),
                    OntologyAxiom::Equal(a, b) | OntologyAxiom::Different(a, b) => {
                        link(Some(a.clone()), Some(b.clone()), Provenance::EqualityMerge)
                    }
                    _ => {}
                }
            }
            for inst in &instances {
                let why = if inst.head.args.len() == 2 && star.is_dl(&inst.head.predicate) {
                    Provenance::RoleEdge
                } else {
                    Provenance::NonDlGuard
                };
                let mut nodes: Vec<Node> = inst.individuals().into_iter().cloned().map(Some).collect();
                if inst.propositional() {
                    nodes.push(None);
                }
                for w in nodes.windows(2) {
                    link(w[0].clone(), w[1].clone(), why);
                }
            }

            let mut uf = UnionFind(BTreeMap::new());
            for (x, ys) in &links {
                for y in ys.keys() {
                    uf.union(x, y);
                }
            }
            let mut members: BTreeMap<Node, Vec<Individual>> = BTreeMap::new();
            for ind in star.individuals().into_iter().chain(instances.iter().flat_map(|i| i.individuals()).cloned()) {
                let root = uf.find(&Some(ind.clone()));
                let m = members.entry(root).or_default();
                if !m.contains(&ind) {
                    m.push(ind);
                }
            }

            let mut next = possible.clone();
            for inst in &instances {
                if !star.is_dl(&inst.head.predicate) {
                    next.insert(inst.head.clone());
                }
            }
            let copies: Vec<GroundAtom> = next
                .iter()
                .flat_map(|a| {
                    let choices: Vec<Vec<Individual>> = a
                        .args
                        .iter()
                        .map(|x| members.get(&uf.find(&Some(x.clone()))).cloned().unwrap_or_else(|| vec![x.clone()]))
                        .collect();
                    let mut out = vec![Vec::new()];
                    for c in choices {
                        out = out
                            .into_iter()
                            .flat_map(|prefix: Vec<Individual>| {
                                c.iter().map(move |x| {
                                    let mut p = prefix.clone();
                                    p.push(x.clone());
                                    p
                                })
                            })
                            .collect();
                    }
                    out.into_iter().map(|args| GroundAtom { predicate: a.predicate.clone(), args })
                })
                .collect();
            next.extend(copies);

            if next == possible {
                p.instances = instances;
                p.non_dl_atoms = possible;
                p.links = links;
                return p;
            }
            possible = next;
        }
    }

    /// The individuals reachable from `start` through links. A `None` start
    /// node stands for the propositional atoms.
    pub fn relevant(&self, start: &BTreeSet<Individual>, propositional: bool) -> RelevantSet {
        let mut set = RelevantSet::default();
        let mut queue: VecDeque<Node> = VecDeque::new();
        for i in start {
            set.individuals.insert(i.clone());
            set.provenance.insert(i.clone(), Provenance::Query);
            queue.push_back(Some(i.clone()));
        }
        if propositional {
            set.propositional = true;
            queue.push_back(None);
        }
        while let Some(x) = queue.pop_front() {
            for (y, why) in self.links.get(&x).into_iter().flatten() {
                match y {
                    None if !set.propositional => {
                        set.propositional = true;
                        queue.push_back(None);
                    }
                    Some(i) if !set.individuals.contains(i) => {
                        set.individuals.insert(i.clone());
                        set.provenance.insert(i.clone(), *why);
                        queue.push_back(y.clone());
                    }
                    _ => {}
                }
            }
        }
        set
    }

    /// Possible instances whose individuals all lie in `rel`.
    pub fn instances_within<'a>(&'a self, rel: &'a RelevantSet) -> impl Iterator<Item = &'a Instance> + 'a {
        self.instances.iter().filter(move |i| {
            rel.contains_all(i.individuals()) && (rel.propositional || !i.propositional())
        })
    }

    /// Ground atoms matching `pattern` that could be derived, for binding
    /// open queries over a non-DL predicate.
    pub fn bindings(&self, pattern: &Atom) -> Vec<Substitution> {
        let mut out: Vec<Substitution> = self
            .non_dl_atoms
            .iter()
            .filter(|a| a.predicate == pattern.predicate)
            .filter_map(|a| pattern.unify(a, &Substitution::new()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn instance(ri: usize, rule: &crate::model::MknfRule, s: &Substitution, np_preds: &BTreeSet<&str>) -> Instance {
    let ground = |a: &Atom| a.substitute(s);
    let mut neg = Vec::new();
    let mut guard = None;
    for a in &rule.not_body {
        if np_preds.contains(a.predicate.as_str()) {
            guard = Some(ground(a));
        } else {
            neg.push(ground(a));
        }
    }
    Instance { rule: ri, head: ground(&rule.head), pos: rule.k_body.iter().map(ground).collect(), neg, guard }
}

/// Every ground instance of the rules of `star` over `universe`, whether or
/// not its body could ever hold.
pub fn full_grounding(star: &KnowledgeBase, universe: &[Individual]) -> Vec<Instance> {
    let np_preds: BTreeSet<&str> = star.np_map.values().map(String::as_str).collect();
    let mut out = Vec::new();
    for (ri, rule) in star.program.iter().enumerate() {
        for s in crate::model::substitutions(&rule.variables(), universe) {
            out.push(instance(ri, rule, &s, &np_preds));
        }
    }
    out
}

/// Substitutions of the variables of `pattern` over `universe`.
pub fn all_bindings(pattern: &Atom, universe: &[Individual]) -> Vec<Substitution> {
    let mut vars: Vec<String> = Vec::new();
    for t in &pattern.args {
        if let Term::Var(v) = t {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    crate::model::substitutions(&vars, universe)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{MknfRule, Signature};

    fn atom(p: &str, args: &[&str]) -> Atom {
        Atom::new(
            p,
            args.iter()
                .map(|a| if a.starts_with(char::is_uppercase) { Term::var(a) } else { Term::constant(a) })
                .collect(),
        )
    }

    #[test]
    fn components_stay_apart() {
        let kb = KnowledgeBase::new(
            vec![OntologyAxiom::RoleFact("spouse".into(), "mary".into(), "john".into())],
            Signature::default(),
            vec![
                MknfRule::new(atom("flag", &["X"]), vec![atom("person", &["X"])], vec![atom("spouse", &["X", "X"])]),
                MknfRule::fact(atom("person", &["john"])),
                MknfRule::fact(atom("ship", &["s1", "norway"])),
            ],
        )
        .unwrap()
        .transform_star();
        let p = Possibility::new(&kb);
        let rel = p.relevant(&[Individual::from("john")].into(), false);
        assert_eq!(rel.individuals, [Individual::from("john"), Individual::from("mary")].into());
        assert_eq!(rel.provenance[&Individual::from("mary")], Provenance::RoleEdge);
        let rel = p.relevant(&[Individual::from("norway")].into(), false);
        assert_eq!(rel.individuals.len(), 2);
        assert_eq!(rel.provenance[&Individual::from("s1")], Provenance::NonDlGuard);
    }

    #[test]
    fn instances_follow_guards() {
        let kb = KnowledgeBase::new(
            vec![],
            Signature::default(),
            vec![
                MknfRule::new(atom("q", &["X"]), vec![atom("p", &["X"])], vec![]),
                MknfRule::new(atom("r", &["X"]), vec![atom("q", &["X"])], vec![atom("s", &["X"])]),
                MknfRule::fact(atom("p", &["a"])),
            ],
        )
        .unwrap();
        let p = Possibility::new(&kb);
        assert_eq!(p.instances.len(), 3);
        assert!(p.non_dl_atoms.contains(&GroundAtom::new("r", &["a"])));
        assert_eq!(p.bindings(&atom("r", &["X"])).len(), 1);
    }
}
