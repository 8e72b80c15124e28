//! Bottom-up computation of the well-founded MKNF model.
//!
//! Everything here is deliberately naive: the whole knowledge base is
//! grounded, every fixpoint is recomputed from scratch, and every entailment
//! candidate is re-checked at each step. The goal-directed engine is tested
//! against this module.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::EngineError;
use crate::model::{AtomSet, GroundAtom, Individual, KnowledgeBase, MknfRule};
use crate::tableau::{AboxView, EntailmentQuery, Reasoner, TableauStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    False,
    Undefined,
    True,
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "true",
            TruthValue::Undefined => "undefined",
            TruthValue::False => "false",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WellFoundedModel {
    /// True atoms of `KA(K)`.
    pub true_atoms: AtomSet,
    /// True or undefined atoms of `KA(K)`.
    pub true_or_undef: AtomSet,
    /// The ontology together with the true DL atoms has no model.
    pub inconsistent: bool,
    /// Every `(T_n, TU_n)` pair computed, unrestricted, starting at `(∅, KA(K*))`.
    pub sequence: Vec<(AtomSet, AtomSet)>,
    /// `|KA(K*)|` of the grounded knowledge base.
    pub star_atoms: usize,
    pub tableau_calls: usize,
}

impl WellFoundedModel {
    pub fn truth(&self, atom: &GroundAtom) -> TruthValue {
        if self.true_atoms.contains(atom) {
            TruthValue::True
        } else if self.true_or_undef.contains(atom) {
            TruthValue::Undefined
        } else {
            TruthValue::False
        }
    }

    pub fn undefined_atoms(&self) -> AtomSet {
        self.true_or_undef.difference(&self.true_atoms).cloned().collect()
    }
}

/// `R_K(S)`: `s` plus the heads of the rules whose positive body lies in `s`.
/// The rules are expected to be ground and positive.
pub fn rk_step(rules: &[MknfRule], s: &AtomSet) -> AtomSet {
    let mut out = s.clone();
    for rule in rules {
        let body_holds = rule.k_body.iter().all(|a| a.to_ground().is_some_and(|g| s.contains(&g)));
        if body_holds {
            out.insert(rule.head.to_ground().expect("ground rule"));
        }
    }
    out
}

/// The MKNF transform of ground `rules` with respect to `s`: rules with a
/// `not` atom in `s` are dropped, the remaining ones lose their `not` body.
pub fn reduct(rules: &[MknfRule], s: &AtomSet) -> Vec<MknfRule> {
    rules
        .iter()
        .filter(|r| r.not_body.iter().all(|a| !s.contains(&a.to_ground().expect("ground rule"))))
        .map(|r| MknfRule::new(r.head.clone(), r.k_body.clone(), Vec::new()))
        .collect()
}

#[derive(Debug, Clone)]
struct Consequences {
    dl: AtomSet,
    /// Representative of each individual's entailed-equality class.
    class_of: BTreeMap<Individual, Individual>,
    inconsistent: bool,
}

/// The ground knowledge base `K*` (and `K⁺`) together with everything needed
/// to evaluate `D_K` on it.
pub struct Oracle {
    kb: KnowledgeBase,
    star_rules: Vec<MknfRule>,
    plus_rules: Vec<MknfRule>,
    ka: AtomSet,
    ka_star: AtomSet,
    reasoner: Reasoner,
    individuals: Vec<Individual>,
    cache: RefCell<HashMap<AtomSet, Consequences>>,
    stats: RefCell<TableauStats>,
}

impl Oracle {
    /// Grounds `kb` over its own individuals plus `extra_individuals`.
    pub fn new(kb: &KnowledgeBase, extra_individuals: &BTreeSet<Individual>) -> Result<Self, EngineError> {
        kb.ensure_dl_safe()?;
        let mut universe = kb.individuals();
        universe.extend(extra_individuals.iter().cloned());
        let star = kb.transform_star();
        let star_ground = star.ground(&universe);
        let plus_ground = kb.transform_plus().ground(&universe);
        let ka = kb.ground(&universe).k_atoms()?;
        let ka_star = star_ground.k_atoms()?;
        let reasoner = Reasoner::new(&star.base_ontology(), &star.signature);
        Ok(Oracle {
            kb: star,
            star_rules: star_ground.program,
            plus_rules: plus_ground.program,
            ka,
            ka_star,
            reasoner,
            individuals: universe.into_iter().collect(),
            cache: RefCell::new(HashMap::new()),
            stats: RefCell::new(TableauStats::default()),
        })
    }

    /// `KA(K)` of the ground knowledge base.
    pub fn k_atoms(&self) -> &AtomSet {
        &self.ka
    }

    /// `KA(K*)` of the ground knowledge base.
    pub fn k_atoms_star(&self) -> &AtomSet {
        &self.ka_star
    }

    pub fn star_rules(&self) -> &[MknfRule] {
        &self.star_rules
    }

    pub fn plus_rules(&self) -> &[MknfRule] {
        &self.plus_rules
    }

    pub fn tableau_calls(&self) -> usize {
        self.stats.borrow().calls
    }

    fn consequences(&self, s: &AtomSet) -> Result<Consequences, EngineError> {
        let dl_part = self.kb.dl_projection(s);
        if let Some(c) = self.cache.borrow().get(&dl_part) {
            return Ok(c.clone());
        }
        let rule_facts: AtomSet = dl_part.iter().filter(|a| self.kb.np_source(&a.predicate).is_none()).cloned().collect();
        let view = AboxView::new(&self.kb.ontology, rule_facts);
        let mut stats = self.stats.borrow_mut();
        let analysis = self.reasoner.analyze(&view, &mut stats)?;
        let mut dl = AtomSet::new();
        for cand in self.ka_star.iter().filter(|a| self.kb.is_dl(&a.predicate)) {
            let query = match self.kb.np_source(&cand.predicate) {
                Some(p) => EntailmentQuery::Negative(GroundAtom { predicate: p.to_string(), args: cand.args.clone() }),
                None => EntailmentQuery::Positive(cand.clone()),
            };
            if analysis.entails(&query, &mut stats)? {
                dl.insert(cand.clone());
            }
        }
        let mut class_of: BTreeMap<Individual, Individual> = BTreeMap::new();
        for (i, x) in self.individuals.iter().enumerate() {
            let mut rep = x.clone();
            for y in &self.individuals[..i] {
                if analysis.entails(&EntailmentQuery::Equality(x.clone(), y.clone()), &mut stats)? {
                    rep = class_of[y].clone();
                    break;
                }
            }
            class_of.insert(x.clone(), rep);
        }
        let c = Consequences { dl, class_of, inconsistent: !analysis.is_consistent() };
        self.cache.borrow_mut().insert(dl_part, c.clone());
        Ok(c)
    }

    /// `D_K(S)`: the entailed DL atoms of `KA(K*)` and the copies of non-DL
    /// atoms of `s` along entailed equalities.
    pub fn dk_step(&self, s: &AtomSet) -> Result<AtomSet, EngineError> {
        let c = self.consequences(s)?;
        let mut out = c.dl;
        let key = |a: &GroundAtom| (a.predicate.clone(), a.args.iter().map(|x| c.class_of[x].clone()).collect::<Vec<_>>());
        let present: BTreeSet<_> = s.iter().filter(|a| !self.kb.is_dl(&a.predicate)).map(key).collect();
        for cand in self.ka_star.iter().filter(|a| !self.kb.is_dl(&a.predicate)) {
            if present.contains(&key(cand)) {
                out.insert(cand.clone());
            }
        }
        Ok(out)
    }

    /// Whether the ontology plus the DL atoms of `s` is inconsistent.
    pub fn is_inconsistent(&self, s: &AtomSet) -> Result<bool, EngineError> {
        Ok(self.consequences(s)?.inconsistent)
    }

    /// `lfp(T_K)` for ground positive `rules`.
    pub fn tk_least_fixpoint(&self, rules: &[MknfRule]) -> Result<AtomSet, EngineError> {
        let mut s = AtomSet::new();
        loop {
            let mut next = rk_step(rules, &s);
            next.extend(self.dk_step(&s)?);
            if next == s {
                return Ok(s);
            }
            s = next;
        }
    }

    /// `Γ(S)`: least fixpoint over the reduct of `K⁺`.
    pub fn gamma(&self, s: &AtomSet) -> Result<AtomSet, EngineError> {
        self.tk_least_fixpoint(&reduct(&self.plus_rules, s))
    }

    /// `Γ'(S)`: least fixpoint over the reduct of `K*`.
    pub fn gamma_prime(&self, s: &AtomSet) -> Result<AtomSet, EngineError> {
        self.tk_least_fixpoint(&reduct(&self.star_rules, s))
    }

    /// Iterates `T_{n+1} = Γ(TU_n)`, `TU_{n+1} = Γ'(T_n)` from `(∅, KA(K*))`.
    pub fn well_founded_model(&self) -> Result<WellFoundedModel, EngineError> {
        let bound = 2 * self.ka_star.len() + 2;
        let mut sequence = vec![(AtomSet::new(), self.ka_star.clone())];
        loop {
            let (t, tu) = sequence.last().expect("non-empty");
            let next = (self.gamma(tu)?, self.gamma_prime(t)?);
            if &next == sequence.last().expect("non-empty") {
                break;
            }
            assert!(sequence.len() <= bound, "alternating sequence exceeded {bound} steps");
            sequence.push(next);
        }
        let (t, tu) = sequence.last().expect("non-empty").clone();
        let inconsistent = self.is_inconsistent(&t)?;
        Ok(WellFoundedModel {
            true_atoms: t.intersection(&self.ka).cloned().collect(),
            true_or_undef: tu.intersection(&self.ka).cloned().collect(),
            inconsistent,
            sequence,
            star_atoms: self.ka_star.len(),
            tableau_calls: self.tableau_calls(),
        })
    }
}

/// The well-founded MKNF model of `kb`, grounded over its own individuals.
pub fn well_founded_model(kb: &KnowledgeBase) -> Result<WellFoundedModel, EngineError> {
    Oracle::new(kb, &BTreeSet::new())?.well_founded_model()
}
