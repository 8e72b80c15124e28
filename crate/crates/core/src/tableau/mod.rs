//! ALCQ consistency and entailment over an ontology plus rule-derived facts.
//!
//! Entailment is refutation: `O ⊨ φ` iff `O ∪ {¬φ}` has no clash-free
//! completion graph. No unique-name assumption is made; `different` facts are
//! the only source of inequality.
//!
//! Role atoms are handled by congruence: `r(a, b)` is entailed iff the view is
//! inconsistent or some asserted `r(a', b')` has `a ≈ a'` and `b ≈ b'`
//! entailed. Without nominals nothing else can force an edge between two
//! named individuals. `¬r(a, b)` is entailed iff adding `r(a, b)` clashes.

mod concept;
mod graph;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::TableauError;
use crate::model::{AtomSet, ClassExpression, GroundAtom, Individual, OntologyAxiom, Signature};
use concept::{CId, ConceptPool, Nnf};
use graph::{expand, CompiledTbox, Graph};

/// The ABox a tableau call reasons over: ontology assertions plus the DL
/// atoms currently derived by the rules.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AboxView {
    pub base: Vec<OntologyAxiom>,
    pub extra: AtomSet,
}

impl AboxView {
    /// Keeps the ABox statements of `axioms` as the base.
    pub fn new<'a>(axioms: impl IntoIterator<Item = &'a OntologyAxiom>, extra: AtomSet) -> Self {
        AboxView { base: axioms.into_iter().filter(|a| a.is_abox()).cloned().collect(), extra }
    }

    pub fn individuals(&self) -> BTreeSet<Individual> {
        let mut out: BTreeSet<Individual> = self.base.iter().flat_map(|a| a.individuals()).cloned().collect();
        out.extend(self.extra.iter().flat_map(|a| a.args.iter().cloned()));
        out
    }

    fn role_facts(&self) -> Vec<(&str, &Individual, &Individual)> {
        let mut out: Vec<(&str, &Individual, &Individual)> = self
            .base
            .iter()
            .filter_map(|a| match a {
                OntologyAxiom::RoleFact(r, x, y) => Some((r.as_str(), x, y)),
                _ => None,
            })
            .collect();
        out.extend(
            self.extra
                .iter()
                .filter(|a| a.args.len() == 2)
                .map(|a| (a.predicate.as_str(), &a.args[0], &a.args[1])),
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntailmentQuery {
    Positive(GroundAtom),
    Negative(GroundAtom),
    Equality(Individual, Individual),
}

impl EntailmentQuery {
    pub fn individuals(&self) -> Vec<&Individual> {
        match self {
            EntailmentQuery::Positive(a) | EntailmentQuery::Negative(a) => a.args.iter().collect(),
            EntailmentQuery::Equality(a, b) => vec![a, b],
        }
    }
}

impl fmt::Display for EntailmentQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntailmentQuery::Positive(a) => write!(f, "{a}"),
            EntailmentQuery::Negative(a) => write!(f, "neg({a})"),
            EntailmentQuery::Equality(a, b) => write!(f, "equal({a}, {b})"),
        }
    }
}

/// Counts of tableau runs and the individuals they mentioned.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableauStats {
    pub calls: usize,
    pub individuals: BTreeSet<Individual>,
}

/// Result of [`Reasoner::entailed_atoms`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Entailed {
    pub atoms: AtomSet,
    /// The view itself was inconsistent, so every candidate is entailed.
    pub inconsistent: bool,
}

enum Assertion {
    Instance(Individual, CId),
    Role(String, Individual, Individual),
    Different(Individual, Individual),
}

/// A compiled TBox. Cheap to share; every call builds its own graph.
#[derive(Debug, Clone)]
pub struct Reasoner {
    tbox: CompiledTbox,
    abox_concepts: HashMap<ClassExpression, CId>,
    signature: Signature,
}

impl Reasoner {
    /// Compiles the TBox part of `ontology`. Every name of `signature` may
    /// appear in views and queries.
    pub fn new(ontology: &[OntologyAxiom], signature: &Signature) -> Self {
        let mut pool = ConceptPool::new();
        let mut unfold: HashMap<String, Vec<CId>> = HashMap::new();
        let mut general = Vec::new();
        let mut abox_concepts = HashMap::new();
        let mut signature = Signature::from_axioms(signature, ontology);
        signature.concepts.retain(|c| !signature.roles.contains(c));

        let mut subsumption = |pool: &mut ConceptPool, lhs: &ClassExpression, rhs: &ClassExpression| {
            let r = pool.intern(rhs);
            match lhs {
                ClassExpression::Named(a) => {
                    pool.name(a);
                    unfold.entry(a.clone()).or_default().push(r);
                }
                _ => {
                    let l = pool.intern(lhs);
                    let nl = pool.neg(l);
                    let gci = pool.or(vec![nl, r]);
                    if !matches!(pool.get(gci), Nnf::Top) {
                        general.push(gci);
                    }
                }
            }
        };
        for ax in ontology {
            match ax {
                OntologyAxiom::Subclass(a, b) => subsumption(&mut pool, a, b),
                OntologyAxiom::Equiv(a, b) => {
                    subsumption(&mut pool, a, b);
                    subsumption(&mut pool, b, a);
                }
                OntologyAxiom::InstanceOf(_, c) => {
                    let id = pool.intern(c);
                    abox_concepts.insert(c.clone(), id);
                }
                _ => {}
            }
        }
        for c in &signature.concepts {
            pool.name(c);
        }
        general.sort_unstable();
        general.dedup();
        Reasoner { tbox: CompiledTbox { pool, unfold, general }, abox_concepts, signature }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    fn check_atom(&self, atom: &GroundAtom) -> Result<(), TableauError> {
        let expected = if self.signature.concepts.contains(&atom.predicate) {
            1
        } else if self.signature.roles.contains(&atom.predicate) {
            2
        } else {
            return Err(TableauError::NonDl(atom.predicate.clone()));
        };
        if atom.args.len() != expected {
            return Err(TableauError::BadArity(atom.predicate.clone(), atom.args.len()));
        }
        Ok(())
    }

    fn concept_id(&self, name: &str) -> CId {
        self.tbox
            .pool
            .lookup(&Nnf::Name(name.to_string()))
            .unwrap_or_else(|| panic!("concept `{name}` was not compiled"))
    }

    fn build(&self, view: &AboxView, extra: Option<&Assertion>) -> Result<Graph, TableauError> {
        let tb = &self.tbox;
        let mut g = Graph::new();
        for ind in view.individuals() {
            g.individual(tb, &ind);
        }
        if let Some(a) = extra {
            match a {
                Assertion::Instance(x, _) => {
                    g.individual(tb, x);
                }
                Assertion::Role(_, x, y) | Assertion::Different(x, y) => {
                    g.individual(tb, x);
                    g.individual(tb, y);
                }
            }
        }
        let mut assertions = Vec::new();
        let mut equalities = Vec::new();
        for ax in &view.base {
            match ax {
                OntologyAxiom::InstanceOf(x, c) => {
                    let id = *self
                        .abox_concepts
                        .get(c)
                        .unwrap_or_else(|| panic!("class expression `{c}` was not compiled"));
                    assertions.push(Assertion::Instance(x.clone(), id));
                }
                OntologyAxiom::RoleFact(r, x, y) => assertions.push(Assertion::Role(r.clone(), x.clone(), y.clone())),
                OntologyAxiom::Different(x, y) => assertions.push(Assertion::Different(x.clone(), y.clone())),
                OntologyAxiom::Equal(x, y) => equalities.push((x.clone(), y.clone())),
                OntologyAxiom::Subclass(..) | OntologyAxiom::Equiv(..) => {}
            }
        }
        for atom in &view.extra {
            self.check_atom(atom)?;
            match atom.args.as_slice() {
                [x] => assertions.push(Assertion::Instance(x.clone(), self.concept_id(&atom.predicate))),
                [x, y] => assertions.push(Assertion::Role(atom.predicate.clone(), x.clone(), y.clone())),
                _ => unreachable!("checked arity"),
            }
        }
        for a in assertions.iter().chain(extra) {
            match a {
                Assertion::Instance(x, c) => {
                    let n = g.individual(tb, x);
                    g.add(tb, n, *c);
                }
                Assertion::Role(r, x, y) => {
                    let (nx, ny) = (g.individual(tb, x), g.individual(tb, y));
                    g.add_edge(nx, r, ny);
                }
                Assertion::Different(x, y) => {
                    let (nx, ny) = (g.individual(tb, x), g.individual(tb, y));
                    g.set_distinct(nx, ny);
                }
            }
        }
        for (x, y) in equalities {
            let (nx, ny) = (g.individual(tb, &x), g.individual(tb, &y));
            g.merge(tb, nx.max(ny), nx.min(ny));
        }
        Ok(g)
    }

    fn run(
        &self,
        view: &AboxView,
        extra: Option<&Assertion>,
        stats: &mut TableauStats,
    ) -> Result<Option<Graph>, TableauError> {
        let g = self.build(view, extra)?;
        stats.calls += 1;
        stats.individuals.extend(g.names.keys().cloned());
        Ok(expand(&self.tbox, g))
    }

    /// Builds one completion of `view`, kept as a model witness for later
    /// entailment checks against the same view.
    pub fn analyze(&self, view: &AboxView, stats: &mut TableauStats) -> Result<Analysis<'_>, TableauError> {
        let model = self.run(view, None, stats)?;
        Ok(Analysis { reasoner: self, view: view.clone(), model })
    }

    pub fn consistent(&self, view: &AboxView) -> Result<bool, TableauError> {
        Ok(self.run(view, None, &mut TableauStats::default())?.is_some())
    }

    pub fn entails(&self, view: &AboxView, query: &EntailmentQuery) -> Result<bool, TableauError> {
        let mut stats = TableauStats::default();
        self.analyze(view, &mut stats)?.entails(query, &mut stats)
    }

    /// The candidates entailed by the view; all of them if it is inconsistent.
    pub fn entailed_atoms(&self, view: &AboxView, candidates: &AtomSet) -> Result<Entailed, TableauError> {
        let mut stats = TableauStats::default();
        let analysis = self.analyze(view, &mut stats)?;
        let mut atoms = AtomSet::new();
        for c in candidates {
            if analysis.entails(&EntailmentQuery::Positive(c.clone()), &mut stats)? {
                atoms.insert(c.clone());
            }
        }
        Ok(Entailed { atoms, inconsistent: !analysis.is_consistent() })
    }
}

/// A view together with one of its models (if any).
pub struct Analysis<'r> {
    reasoner: &'r Reasoner,
    view: AboxView,
    model: Option<Graph>,
}

impl Analysis<'_> {
    pub fn is_consistent(&self) -> bool {
        self.model.is_some()
    }

    pub fn view(&self) -> &AboxView {
        &self.view
    }

    fn refutes(&self, assertion: Assertion, stats: &mut TableauStats) -> Result<bool, TableauError> {
        Ok(self.reasoner.run(&self.view, Some(&assertion), stats)?.is_none())
    }

    pub fn entails(&self, query: &EntailmentQuery, stats: &mut TableauStats) -> Result<bool, TableauError> {
        let r = self.reasoner;
        match query {
            EntailmentQuery::Positive(a) | EntailmentQuery::Negative(a) => {
                r.check_atom(a)?;
            }
            EntailmentQuery::Equality(..) => {}
        }
        let Some(model) = &self.model else { return Ok(true) };
        match query {
            EntailmentQuery::Equality(a, b) => {
                if a == b {
                    return Ok(true);
                }
                match (model.node_of(a), model.node_of(b)) {
                    (Some(x), Some(y)) if x == y => {
                        self.refutes(Assertion::Different(a.clone(), b.clone()), stats)
                    }
                    _ => Ok(false),
                }
            }
            EntailmentQuery::Positive(atom) if atom.args.len() == 1 => {
                let c = r.concept_id(&atom.predicate);
                let x = &atom.args[0];
                match model.node_of(x) {
                    Some(n) if model.nodes[n].label.contains_key(&c) => {
                        self.refutes(Assertion::Instance(x.clone(), r.tbox.pool.neg(c)), stats)
                    }
                    _ => Ok(false),
                }
            }
            EntailmentQuery::Negative(atom) if atom.args.len() == 1 => {
                let c = r.concept_id(&atom.predicate);
                let x = &atom.args[0];
                if let Some(n) = model.node_of(x) {
                    if model.nodes[n].label.contains_key(&c) {
                        return Ok(false);
                    }
                }
                self.refutes(Assertion::Instance(x.clone(), c), stats)
            }
            EntailmentQuery::Positive(atom) => {
                let (a, b) = (&atom.args[0], &atom.args[1]);
                for (role, x, y) in self.view.role_facts() {
                    if role != atom.predicate {
                        continue;
                    }
                    if self.entails(&EntailmentQuery::Equality(a.clone(), x.clone()), stats)?
                        && self.entails(&EntailmentQuery::Equality(b.clone(), y.clone()), stats)?
                    {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            EntailmentQuery::Negative(atom) => {
                let (a, b) = (&atom.args[0], &atom.args[1]);
                if let (Some(x), Some(y)) = (model.node_of(a), model.node_of(b)) {
                    if model.has_edge(x, &atom.predicate, y) {
                        return Ok(false);
                    }
                }
                self.refutes(Assertion::Role(atom.predicate.clone(), a.clone(), b.clone()), stats)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ClassExpression as C;

    fn sub(a: C, b: C) -> OntologyAxiom {
        OntologyAxiom::Subclass(a, b)
    }

    fn inst(i: &str, c: C) -> OntologyAxiom {
        OntologyAxiom::InstanceOf(i.into(), c)
    }

    fn role(r: &str, a: &str, b: &str) -> OntologyAxiom {
        OntologyAxiom::RoleFact(r.into(), a.into(), b.into())
    }

    fn reasoner(axioms: &[OntologyAxiom]) -> Reasoner {
        Reasoner::new(axioms, &Signature::default())
    }

    fn pos(p: &str, args: &[&str]) -> EntailmentQuery {
        EntailmentQuery::Positive(GroundAtom::new(p, args))
    }

    fn neg(p: &str, args: &[&str]) -> EntailmentQuery {
        EntailmentQuery::Negative(GroundAtom::new(p, args))
    }

    #[test]
    fn simple_subsumption_is_consistent() {
        let o = vec![sub(C::named("a"), C::named("b")), inst("x", C::named("a"))];
        let r = reasoner(&o);
        assert!(r.consistent(&AboxView::new(&o, AtomSet::new())).unwrap());
        assert!(r.entails(&AboxView::new(&o, AtomSet::new()), &pos("b", &["x"])).unwrap());
    }

    #[test]
    fn complement_definition_clashes() {
        let o = vec![
            OntologyAxiom::Equiv(C::named("nonMarried"), C::neg(C::named("married"))),
            inst("john", C::named("nonMarried")),
            inst("john", C::named("married")),
        ];
        assert!(!reasoner(&o).consistent(&AboxView::new(&o, AtomSet::new())).unwrap());
    }

    #[test]
    fn at_most_with_distinct_fillers_clashes() {
        let o = vec![
            inst("a", C::at_most(1, "r", C::Top)),
            role("r", "a", "b"),
            role("r", "a", "c"),
            OntologyAxiom::Different("b".into(), "c".into()),
        ];
        assert!(!reasoner(&o).consistent(&AboxView::new(&o, AtomSet::new())).unwrap());
    }

    #[test]
    fn at_most_forces_equality() {
        let o = vec![inst("a", C::at_most(1, "r", C::Top)), role("r", "a", "b"), role("r", "a", "c")];
        let r = reasoner(&o);
        let view = AboxView::new(&o, AtomSet::new());
        assert!(r.entails(&view, &EntailmentQuery::Equality("b".into(), "c".into())).unwrap());
        assert!(!r.entails(&view, &EntailmentQuery::Equality("a".into(), "c".into())).unwrap());
    }

    #[test]
    fn rule_facts_feed_the_abox() {
        let o = vec![sub(C::named("a"), C::named("b"))];
        let r = reasoner(&o);
        let view = AboxView::new(&o, [GroundAtom::new("a", &["object"])].into());
        assert!(r.entails(&view, &pos("b", &["object"])).unwrap());
        let candidates: AtomSet = [GroundAtom::new("a", &["object"]), GroundAtom::new("b", &["object"])].into();
        let e = r.entailed_atoms(&view, &candidates).unwrap();
        assert_eq!(e.atoms, candidates);
        assert!(!e.inconsistent);
        assert!(r.entailed_atoms(&view, &AtomSet::new()).unwrap().atoms.is_empty());
    }

    #[test]
    fn spouse_implies_married() {
        let o = vec![
            sub(C::exists("spouse", C::Top), C::named("married")),
            inst("bill", C::exists("spouse", C::Top)),
        ];
        let r = reasoner(&o);
        let view = AboxView::new(&o, AtomSet::new());
        assert!(r.entails(&view, &pos("married", &["bill"])).unwrap());
        assert!(!r.entails(&view, &pos("spouse", &["bill", "bill"])).unwrap());
    }

    #[test]
    fn diplomatic_shipments_are_not_inspected() {
        let o = vec![
            sub(C::named("diplomaticShipment"), C::neg(C::named("inspect"))),
            inst("s2", C::named("diplomaticShipment")),
        ];
        let r = reasoner(&o);
        let view = AboxView::new(&o, AtomSet::new());
        assert!(r.entails(&view, &neg("inspect", &["s2"])).unwrap());
        assert!(!r.entails(&view, &pos("inspect", &["s2"])).unwrap());
    }

    #[test]
    fn inconsistent_view_entails_everything() {
        let o = vec![sub(C::named("a"), C::Bottom), inst("x", C::named("a"))];
        let r = Reasoner::new(&o, &Signature { concepts: ["q".to_string()].into(), roles: BTreeSet::new() });
        let view = AboxView::new(&o, AtomSet::new());
        let candidates: AtomSet = [GroundAtom::new("q", &["y"])].into();
        let e = r.entailed_atoms(&view, &candidates).unwrap();
        assert!(e.inconsistent);
        assert_eq!(e.atoms, candidates);
    }

    #[test]
    fn negative_role_entailment() {
        let o = vec![inst("a", C::forall("r", C::named("p"))), inst("b", C::neg(C::named("p")))];
        let r = reasoner(&o);
        let view = AboxView::new(&o, AtomSet::new());
        assert!(r.entails(&view, &neg("r", &["a", "b"])).unwrap());
        assert!(!r.entails(&view, &neg("r", &["b", "a"])).unwrap());
    }

    #[test]
    fn role_congruence_through_equality() {
        let o = vec![
            role("r", "a", "b"),
            OntologyAxiom::Equal("b".into(), "c".into()),
        ];
        let r = reasoner(&o);
        let view = AboxView::new(&o, AtomSet::new());
        assert!(r.entails(&view, &pos("r", &["a", "c"])).unwrap());
        assert!(!r.entails(&view, &pos("r", &["c", "a"])).unwrap());
    }

    #[test]
    fn non_dl_queries_are_rejected() {
        let o = vec![inst("x", C::named("a"))];
        let r = reasoner(&o);
        let view = AboxView::new(&o, AtomSet::new());
        assert_eq!(r.entails(&view, &pos("zzz", &["x"])), Err(TableauError::NonDl("zzz".into())));
        assert!(matches!(r.entails(&view, &pos("a", &["x", "y"])), Err(TableauError::BadArity(..))));
    }

    #[test]
    fn cyclic_existentials_terminate() {
        let o = vec![
            sub(C::named("a"), C::exists("r", C::named("a"))),
            sub(C::Top, C::at_most(1, "r", C::Top)),
            inst("x", C::named("a")),
        ];
        let r = reasoner(&o);
        let view = AboxView::new(&o, AtomSet::new());
        assert!(r.consistent(&view).unwrap());
        assert!(!r.entails(&view, &pos("a", &["y"])).unwrap());
    }
}
