//! Goal-directed query answering.
//!
//! A query is evaluated over the individuals it is connected to (see
//! [`relevance`]). Evaluation runs a sequence of outer iterations; even ones
//! compute true-or-undefined atoms under the rules of `K*`, odd ones compute
//! true atoms under the rules of `K⁺`. A `not` literal in outer iteration `o`
//! succeeds iff its atom was not proven in the last layer of `o − 1`, and
//! always in outer iteration 0. Each outer iteration alternates rule
//! closure and ontology consequences until a layer repeats.
//!
//! Inconsistency in a part of the knowledge base that the query does not
//! reach is invisible under the default [`ConsistencyScope::Relevant`].
//! [`ConsistencyScope::Global`] first evaluates the whole knowledge base once
//! and, if its true atoms clash with the ontology, answers every query over
//! the full grounding.
//!
//! The outer loop stops at the first even `o ≥ 2` whose final layer equals
//! that of `o − 2`. An atom is true if proven at `o − 1`, undefined if proven
//! only at `o`, and false otherwise.

pub mod relevance;

use std::cell::{OnceCell, RefCell};
use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::EngineError;
use crate::model::{Atom, AtomSet, GroundAtom, Individual, KnowledgeBase, Substitution};
use crate::oracle::TruthValue;
use crate::tableau::{AboxView, Analysis, EntailmentQuery, Reasoner, TableauStats};
pub use relevance::{Instance, Possibility, Provenance, RelevantSet};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ConsistencyScope {
    /// Only the individuals connected to the query are checked.
    #[default]
    Relevant,
    /// The whole knowledge base is checked once per engine.
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub max_individuals: usize,
    /// Defaults to `2·|KA(K*)| + 2` of the relevant sub-knowledge base.
    pub max_outer: Option<usize>,
    /// Keep entailment results across queries.
    pub retain_cache: bool,
    pub consistency: ConsistencyScope,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_individuals: 10_000,
            max_outer: None,
            retain_cache: false,
            consistency: ConsistencyScope::Relevant,
        }
    }
}

/// Proven atoms per `(outer, inner)` layer, plus the ontology consequences
/// computed from each layer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IterationTable {
    layers: Vec<Vec<AtomSet>>,
    entailed: Vec<Vec<AtomSet>>,
    np_map: BTreeMap<String, String>,
}

impl IterationTable {
    pub fn outer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn inner_count(&self, outer: usize) -> usize {
        self.layers.get(outer).map_or(0, Vec::len)
    }

    /// The inner index at which the inner sequence of `outer` repeated.
    pub fn final_inner_of(&self, outer: usize) -> Option<usize> {
        self.layers.get(outer).and_then(|l| l.len().checked_sub(1))
    }

    pub fn layer(&self, outer: usize, inner: usize) -> Option<&AtomSet> {
        self.layers.get(outer)?.get(inner)
    }

    pub fn final_layer(&self, outer: usize) -> Option<&AtomSet> {
        self.layers.get(outer)?.last()
    }

    /// Whether `atom` was proven at `(outer, inner)`.
    pub fn known(&self, atom: &GroundAtom, outer: usize, inner: usize) -> bool {
        self.layer(outer, inner).is_some_and(|l| l.contains(atom))
    }

    /// Whether `not atom` holds in outer iteration `outer`.
    pub fn dlnot(&self, atom: &GroundAtom, outer: usize) -> bool {
        outer == 0 || !self.final_layer(outer - 1).is_some_and(|l| l.contains(atom))
    }

    /// Whether the ontology entailed `¬atom` from the layer `(outer, inner)`.
    /// Only tracked for predicates that head a rule.
    pub fn neg_entailed(&self, atom: &GroundAtom, outer: usize, inner: usize) -> bool {
        let Some(np) = self.np_map.get(&atom.predicate) else { return false };
        let probe = GroundAtom { predicate: np.clone(), args: atom.args.clone() };
        self.entailed.get(outer).and_then(|e| e.get(inner)).is_some_and(|e| e.contains(&probe))
    }

    /// Ontology consequences computed from layer `(outer, inner)`.
    pub fn entailed(&self, outer: usize, inner: usize) -> Option<&AtomSet> {
        self.entailed.get(outer)?.get(inner)
    }

    /// `(outer, inner, newly proven atoms)` for every layer, in order.
    pub fn layer_growth(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (o, layers) in self.layers.iter().enumerate() {
            for (i, l) in layers.iter().enumerate() {
                let before = if i == 0 { 0 } else { layers[i - 1].len() };
                out.push((o, i, l.len() - before));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub tableau_calls: usize,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    /// Individuals mentioned by any tableau call.
    pub individuals_touched: BTreeSet<Individual>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryAnswer {
    pub substitution: Substitution,
    pub atom: GroundAtom,
    pub value: TruthValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    pub answers: Vec<QueryAnswer>,
    pub stats: QueryStats,
    pub relevant: RelevantSet,
    pub table: IterationTable,
    /// The ontology plus the true DL atoms over the relevant individuals has no model.
    pub inconsistent: bool,
    pub warnings: Vec<String>,
}

impl QueryResult {
    /// The single answer of a ground query.
    pub fn value(&self) -> TruthValue {
        self.answers.first().map_or(TruthValue::False, |a| a.value)
    }
}

type ViewKey = (BTreeSet<Individual>, AtomSet);

#[derive(Debug, Default)]
struct Retained {
    consistent: HashMap<ViewKey, bool>,
    answers: HashMap<(ViewKey, EntailmentQuery), bool>,
}

/// Answers queries against one knowledge base.
pub struct Engine {
    kb: KnowledgeBase,
    star: KnowledgeBase,
    reasoner: Reasoner,
    possible: Possibility,
    config: EngineConfig,
    retained: RefCell<Retained>,
    explodes: OnceCell<bool>,
}

impl Engine {
    pub fn new(kb: &KnowledgeBase, config: EngineConfig) -> Result<Self, EngineError> {
        kb.ensure_dl_safe()?;
        let star = kb.transform_star();
        let reasoner = Reasoner::new(&star.base_ontology(), &star.signature);
        let possible = Possibility::new(&star);
        Ok(Engine { kb: kb.clone(), star, reasoner, possible, config, retained: RefCell::default(), explodes: OnceCell::new() })
    }

    pub fn knowledge_base(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// Answers a ground or open query. Open queries are answered for every
    /// binding that could possibly hold, sorted by binding.
    pub fn answer(&self, query: &Atom) -> Result<QueryResult, EngineError> {
        let mut warnings = Vec::new();
        let known_predicate = self.kb.signature.contains(&query.predicate)
            || self.kb.program.iter().flat_map(|r| r.atoms()).any(|a| a.predicate == query.predicate);
        if !known_predicate {
            warnings.push(format!("predicate `{}` does not occur in the knowledge base", query.predicate));
        }
        let targets: Vec<(Substitution, GroundAtom)> =
            self.bindings(query).into_iter().map(|s| (s.clone(), query.substitute(&s))).collect();
        let mut result = self.classify(targets)?;
        result.warnings = warnings;
        Ok(result)
    }

    /// Evaluates `atoms` in one joint run and classifies each of them.
    pub fn answer_atoms(&self, atoms: &[GroundAtom]) -> Result<QueryResult, EngineError> {
        self.classify(atoms.iter().map(|a| (Substitution::new(), a.clone())).collect())
    }

    fn classify(&self, targets: Vec<(Substitution, GroundAtom)>) -> Result<QueryResult, EngineError> {
        let atoms: Vec<GroundAtom> = targets.iter().map(|t| t.1.clone()).collect();
        let mut result = self.evaluate(&atoms)?;
        let last = result.table.outer_count() - 1;
        let t = result.table.final_layer(last - 1).cloned().unwrap_or_default();
        let tu = result.table.final_layer(last).cloned().unwrap_or_default();
        result.answers = targets
            .into_iter()
            .map(|(substitution, atom)| {
                let value = if t.contains(&atom) {
                    TruthValue::True
                } else if tu.contains(&atom) {
                    TruthValue::Undefined
                } else {
                    TruthValue::False
                };
                QueryAnswer { substitution, atom, value }
            })
            .collect();
        Ok(result)
    }

    /// Groundings considered for `query`: the possibly derivable atoms for a
    /// non-DL predicate, every tuple of known individuals for a DL predicate.
    pub fn bindings(&self, query: &Atom) -> Vec<Substitution> {
        if query.is_ground() {
            vec![Substitution::new()]
        } else if self.kb.is_dl(&query.predicate) {
            let universe: Vec<Individual> = self.kb.individuals().into_iter().collect();
            relevance::all_bindings(query, &universe)
        } else {
            self.possible.bindings(query)
        }
    }

    /// Runs the layered evaluation for `targets` without classifying them.
    pub fn evaluate(&self, targets: &[GroundAtom]) -> Result<QueryResult, EngineError> {
        if self.config.consistency == ConsistencyScope::Global && self.globally_inconsistent()? {
            return self.evaluate_full(targets);
        }
        let start: BTreeSet<Individual> = targets.iter().flat_map(|a| a.args.iter().cloned()).collect();
        let propositional = targets.iter().any(|a| a.args.is_empty());
        let relevant = self.possible.relevant(&start, propositional);
        if relevant.len() > self.config.max_individuals {
            return Err(EngineError::TooManyIndividuals(self.config.max_individuals));
        }
        let instances = self.possible.instances_within(&relevant).cloned().collect();
        self.run(relevant, instances, targets)
    }

    fn evaluate_full(&self, targets: &[GroundAtom]) -> Result<QueryResult, EngineError> {
        let mut individuals = self.kb.individuals();
        individuals.extend(targets.iter().flat_map(|a| a.args.iter().cloned()));
        if individuals.len() > self.config.max_individuals {
            return Err(EngineError::TooManyIndividuals(self.config.max_individuals));
        }
        let universe: Vec<Individual> = individuals.iter().cloned().collect();
        let instances = relevance::full_grounding(&self.star, &universe);
        let relevant = RelevantSet {
            provenance: individuals.iter().map(|i| (i.clone(), Provenance::Query)).collect(),
            individuals,
            propositional: true,
        };
        self.run(relevant, instances, targets)
    }

    /// Whether the whole knowledge base, evaluated over its full grounding,
    /// ends with true atoms that contradict the ontology.
    pub fn globally_inconsistent(&self) -> Result<bool, EngineError> {
        if let Some(&b) = self.explodes.get() {
            return Ok(b);
        }
        let b = self.evaluate_full(&[])?.inconsistent;
        Ok(*self.explodes.get_or_init(|| b))
    }

    fn run(&self, relevant: RelevantSet, instances: Vec<Instance>, targets: &[GroundAtom]) -> Result<QueryResult, EngineError> {
        let mut run = Run::new(self, &relevant, instances, targets);
        let table = run.iterate()?;
        let t = table.final_layer(table.outer_count() - 2).cloned().unwrap_or_default();
        let inconsistent = !run.consistent(&t)?;
        let stats = QueryStats {
            tableau_calls: run.stats.calls,
            outer_iterations: table.outer_count(),
            inner_iterations: (0..table.outer_count()).map(|o| table.inner_count(o)).sum(),
            individuals_touched: run.stats.individuals.clone(),
        };
        Ok(QueryResult { answers: Vec::new(), stats, relevant, table, inconsistent, warnings: Vec::new() })
    }

    /// Direct ontology entailment for `query` with `facts` as extra ABox atoms.
    pub fn all_models_entails(&self, facts: &AtomSet, query: &EntailmentQuery) -> Result<bool, EngineError> {
        let view = AboxView::new(&self.star.ontology, facts.clone());
        Ok(self.reasoner.entails(&view, query)?)
    }
}

struct Run<'e> {
    engine: &'e Engine,
    relevant: BTreeSet<Individual>,
    base: Vec<crate::model::OntologyAxiom>,
    instances: Vec<Instance>,
    by_body: HashMap<GroundAtom, Vec<usize>>,
    dl_candidates: Vec<GroundAtom>,
    non_dl_candidates: Vec<GroundAtom>,
    analyses: HashMap<AtomSet, Analysis<'e>>,
    stats: TableauStats,
}

impl<'e> Run<'e> {
    fn new(engine: &'e Engine, relevant: &RelevantSet, instances: Vec<Instance>, targets: &[GroundAtom]) -> Self {
        let mut by_body: HashMap<GroundAtom, Vec<usize>> = HashMap::new();
        let mut candidates = AtomSet::new();
        for (k, inst) in instances.iter().enumerate() {
            let distinct: BTreeSet<&GroundAtom> = inst.pos.iter().collect();
            for a in distinct {
                by_body.entry(a.clone()).or_default().push(k);
            }
            candidates.extend(inst.atoms().cloned());
        }
        candidates.extend(targets.iter().cloned());
        let (dl_candidates, non_dl_candidates) = candidates.into_iter().partition(|a| engine.star.is_dl(&a.predicate));
        let base = engine
            .star
            .ontology
            .iter()
            .filter(|ax| ax.is_abox() && relevant.contains_all(ax.individuals()))
            .cloned()
            .collect();
        Run {
            engine,
            relevant: relevant.individuals.clone(),
            base,
            instances,
            by_body,
            dl_candidates,
            non_dl_candidates,
            analyses: HashMap::new(),
            stats: TableauStats::default(),
        }
    }

    fn star_atoms(&self) -> usize {
        self.dl_candidates.len() + self.non_dl_candidates.len()
    }

    /// Least set containing `seed` and closed under the active instances.
    fn closure(&self, active: &[bool], seed: &AtomSet) -> AtomSet {
        let mut missing: Vec<usize> = self
            .instances
            .iter()
            .map(|i| {
                let distinct: BTreeSet<&GroundAtom> = i.pos.iter().collect();
                distinct.len()
            })
            .collect();
        let mut out = AtomSet::new();
        let mut queue: Vec<GroundAtom> = seed.iter().cloned().collect();
        for (k, inst) in self.instances.iter().enumerate() {
            if active[k] && missing[k] == 0 {
                queue.push(inst.head.clone());
            }
        }
        while let Some(a) = queue.pop() {
            if !out.insert(a.clone()) {
                continue;
            }
            for &k in self.by_body.get(&a).into_iter().flatten() {
                missing[k] -= 1;
                if missing[k] == 0 && active[k] {
                    queue.push(self.instances[k].head.clone());
                }
            }
        }
        out
    }

    fn key(&self, extra: &AtomSet) -> ViewKey {
        (self.relevant.clone(), extra.clone())
    }

    fn rule_facts(&self, s: &AtomSet) -> AtomSet {
        let star = &self.engine.star;
        s.iter().filter(|a| star.is_dl(&a.predicate) && star.np_source(&a.predicate).is_none()).cloned().collect()
    }

    fn analysis(&mut self, extra: &AtomSet) -> Result<&Analysis<'e>, EngineError> {
        if !self.analyses.contains_key(extra) {
            let view = AboxView { base: self.base.clone(), extra: extra.clone() };
            let a = self.engine.reasoner.analyze(&view, &mut self.stats)?;
            self.analyses.insert(extra.clone(), a);
        }
        Ok(&self.analyses[extra])
    }

    fn entails(&mut self, extra: &AtomSet, query: &EntailmentQuery) -> Result<bool, EngineError> {
        let retain = self.engine.config.retain_cache;
        let rkey = (self.key(extra), query.clone());
        if retain {
            if let Some(&b) = self.engine.retained.borrow().answers.get(&rkey) {
                return Ok(b);
            }
        }
        self.analysis(extra)?;
        let analysis = &self.analyses[extra];
        let b = analysis.entails(query, &mut self.stats)?;
        if retain {
            self.engine.retained.borrow_mut().answers.insert(rkey, b);
        }
        Ok(b)
    }

    fn consistent(&mut self, s: &AtomSet) -> Result<bool, EngineError> {
        let extra = self.rule_facts(s);
        let key = self.key(&extra);
        let retain = self.engine.config.retain_cache;
        if retain {
            if let Some(&b) = self.engine.retained.borrow().consistent.get(&key) {
                return Ok(b);
            }
        }
        let b = self.analysis(&extra)?.is_consistent();
        if retain {
            self.engine.retained.borrow_mut().consistent.insert(key, b);
        }
        Ok(b)
    }

    /// Ontology consequences of `s` among the candidates not already in `s`.
    fn consequences(&mut self, s: &AtomSet) -> Result<AtomSet, EngineError> {
        let extra = self.rule_facts(s);
        let mut out = AtomSet::new();
        let dl: Vec<GroundAtom> = self.dl_candidates.iter().filter(|c| !s.contains(*c)).cloned().collect();
        for cand in dl {
            let query = match self.engine.star.np_source(&cand.predicate) {
                Some(p) => EntailmentQuery::Negative(GroundAtom { predicate: p.to_string(), args: cand.args.clone() }),
                None => EntailmentQuery::Positive(cand.clone()),
            };
            if self.entails(&extra, &query)? {
                out.insert(cand);
            }
        }
        let mut by_pred: BTreeMap<(&str, usize), Vec<&GroundAtom>> = BTreeMap::new();
        for a in s.iter().filter(|a| !self.engine.star.is_dl(&a.predicate)) {
            by_pred.entry((a.predicate.as_str(), a.args.len())).or_default().push(a);
        }
        let mut copies = Vec::new();
        for cand in self.non_dl_candidates.iter().filter(|c| !s.contains(*c) && !c.args.is_empty()) {
            for a in by_pred.get(&(cand.predicate.as_str(), cand.args.len())).into_iter().flatten() {
                copies.push((cand.clone(), (*a).clone()));
            }
        }
        'cand: for (cand, a) in copies {
            if out.contains(&cand) {
                continue;
            }
            for (x, y) in a.args.iter().zip(&cand.args) {
                if x != y && !self.entails(&extra, &EntailmentQuery::Equality(x.clone(), y.clone()))? {
                    continue 'cand;
                }
            }
            out.insert(cand);
        }
        Ok(out)
    }

    fn iterate(&mut self) -> Result<IterationTable, EngineError> {
        let max_outer = self.engine.config.max_outer.unwrap_or(2 * self.star_atoms() + 2);
        let mut table = IterationTable { np_map: self.engine.star.np_map.clone(), ..Default::default() };
        for o in 0.. {
            if o > max_outer {
                return Err(EngineError::TooManyOuterIterations(max_outer));
            }
            let even = o % 2 == 0;
            let active: Vec<bool> = self
                .instances
                .iter()
                .map(|inst| {
                    inst.neg.iter().all(|a| table.dlnot(a, o))
                        && (!even || inst.guard.as_ref().is_none_or(|g| table.dlnot(g, o)))
                })
                .collect();
            let mut layers: Vec<AtomSet> = Vec::new();
            let mut entailed: Vec<AtomSet> = Vec::new();
            let mut seed = AtomSet::new();
            loop {
                let layer = self.closure(&active, &seed);
                let repeated = layers.last() == Some(&layer);
                if repeated {
                    break;
                }
                let e = self.consequences(&layer)?;
                seed = layer.union(&e).cloned().collect();
                layers.push(layer);
                entailed.push(e);
            }
            table.layers.push(layers);
            table.entailed.push(entailed);
            if even && o >= 2 && table.final_layer(o) == table.final_layer(o - 2) {
                return Ok(table);
            }
        }
        unreachable!("the outer loop returns or fails")
    }
}
