//! Hybrid MKNF knowledge bases: individuals, atoms, rules, the ALCQ axiom
//! language, and the `K⁺`/`K*` transforms.
//!
//! A predicate is a *DL predicate* iff its name occurs in the ontology
//! signature. Concepts have arity 1 and roles arity 2; every other predicate
//! is defined by the rules alone and may have any arity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::ModelError;

/// A named individual. Two individuals are the same iff their names are.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Individual(String);

impl Individual {
    pub fn new(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(!name.is_empty(), "individual names are non-empty");
        Individual(name)
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Individual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Individual {
    fn from(s: &str) -> Self {
        Individual::new(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PredicateKind {
    Dl,
    NonDl,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Predicate {
    pub name: String,
    pub arity: usize,
    pub kind: PredicateKind,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(Individual),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str) -> Self {
        Term::Const(Individual::new(name))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

/// Variable bindings produced while grounding.
pub type Substitution = BTreeMap<String, Individual>;

/// `P(t1, ..., tn)` where each term is a variable or an individual.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom { predicate: predicate.into(), args }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.variables().next().is_none()
    }

    pub fn to_ground(&self) -> Option<GroundAtom> {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => Some(c.clone()),
                Term::Var(_) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(GroundAtom { predicate: self.predicate.clone(), args })
    }

    /// Applies `subst`; panics if a variable is left unbound.
    pub fn substitute(&self, subst: &Substitution) -> GroundAtom {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => c.clone(),
                Term::Var(v) => subst
                    .get(v)
                    .unwrap_or_else(|| panic!("unbound variable {v}"))
                    .clone(),
            })
            .collect();
        GroundAtom { predicate: self.predicate.clone(), args }
    }

    /// Extends `subst` so that this atom matches `ground`, if possible.
    pub fn unify(&self, ground: &GroundAtom, subst: &Substitution) -> Option<Substitution> {
        if self.predicate != ground.predicate || self.args.len() != ground.args.len() {
            return None;
        }
        let mut out = subst.clone();
        for (t, g) in self.args.iter().zip(&ground.args) {
            match t {
                Term::Const(c) if c != g => return None,
                Term::Const(_) => {}
                Term::Var(v) => match out.get(v) {
                    Some(bound) if bound != g => return None,
                    Some(_) => {}
                    None => {
                        out.insert(v.clone(), g.clone());
                    }
                },
            }
        }
        Some(out)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A variable-free atom. Sets of these stand for sets of modal `K`-atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<Individual>,
}

impl GroundAtom {
    pub fn new(predicate: impl Into<String>, args: &[&str]) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            args: args.iter().map(|a| Individual::new(*a)).collect(),
        }
    }

    pub fn to_atom(&self) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.iter().cloned().map(Term::Const).collect(),
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A set of ground `K`-atoms.
pub type AtomSet = BTreeSet<GroundAtom>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    K,
    Not,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModalAtom {
    pub polarity: Polarity,
    pub atom: Atom,
}

/// `K H ← K A1, ..., K An, not B1, ..., not Bm`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MknfRule {
    pub head: Atom,
    pub k_body: Vec<Atom>,
    pub not_body: Vec<Atom>,
}

impl MknfRule {
    pub fn fact(head: Atom) -> Self {
        MknfRule { head, k_body: Vec::new(), not_body: Vec::new() }
    }

    pub fn new(head: Atom, k_body: Vec<Atom>, not_body: Vec<Atom>) -> Self {
        MknfRule { head, k_body, not_body }
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        std::iter::once(&self.head).chain(&self.k_body).chain(&self.not_body)
    }

    pub fn modal_atoms(&self) -> Vec<ModalAtom> {
        let k = std::iter::once(&self.head).chain(&self.k_body).map(|a| ModalAtom {
            polarity: Polarity::K,
            atom: a.clone(),
        });
        let n = self.not_body.iter().map(|a| ModalAtom { polarity: Polarity::Not, atom: a.clone() });
        k.chain(n).collect()
    }

    /// Variables in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for v in self.atoms().flat_map(|a| a.variables()) {
            if !out.iter().any(|o| o == v) {
                out.push(v.to_string());
            }
        }
        out
    }

    pub fn is_ground(&self) -> bool {
        self.atoms().all(Atom::is_ground)
    }

    pub fn is_positive(&self) -> bool {
        self.not_body.is_empty()
    }
}

impl fmt::Display for MknfRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if self.k_body.is_empty() && self.not_body.is_empty() {
            return f.write_str(".");
        }
        f.write_str(" :- ")?;
        let mut first = true;
        for a in &self.k_body {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{a}")?;
        }
        for a in &self.not_body {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "not {a}")?;
        }
        f.write_str(".")
    }
}

/// ALCQ class expressions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassExpression {
    Top,
    Bottom,
    Named(String),
    Neg(Box<ClassExpression>),
    And(Vec<ClassExpression>),
    Or(Vec<ClassExpression>),
    Exists(String, Box<ClassExpression>),
    Forall(String, Box<ClassExpression>),
    AtLeast(u32, String, Box<ClassExpression>),
    AtMost(u32, String, Box<ClassExpression>),
}

impl ClassExpression {
    pub fn named(name: &str) -> Self {
        ClassExpression::Named(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(c: ClassExpression) -> Self {
        ClassExpression::Neg(Box::new(c))
    }

    pub fn exists(role: &str, c: ClassExpression) -> Self {
        ClassExpression::Exists(role.to_string(), Box::new(c))
    }

    pub fn forall(role: &str, c: ClassExpression) -> Self {
        ClassExpression::Forall(role.to_string(), Box::new(c))
    }

    pub fn at_least(n: u32, role: &str, c: ClassExpression) -> Self {
        ClassExpression::AtLeast(n, role.to_string(), Box::new(c))
    }

    pub fn at_most(n: u32, role: &str, c: ClassExpression) -> Self {
        ClassExpression::AtMost(n, role.to_string(), Box::new(c))
    }

    /// Collects concept and role names mentioned in this expression.
    pub fn collect_names(&self, concepts: &mut BTreeSet<String>, roles: &mut BTreeSet<String>) {
        use ClassExpression::*;
        match self {
            Top | Bottom => {}
            Named(n) => {
                concepts.insert(n.clone());
            }
            Neg(c) => c.collect_names(concepts, roles),
            And(cs) | Or(cs) => cs.iter().for_each(|c| c.collect_names(concepts, roles)),
            Exists(r, c) | Forall(r, c) | AtLeast(_, r, c) | AtMost(_, r, c) => {
                roles.insert(r.clone());
                c.collect_names(concepts, roles);
            }
        }
    }
}

impl fmt::Display for ClassExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ClassExpression::*;
        let list = |f: &mut fmt::Formatter<'_>, op: &str, cs: &[ClassExpression]| {
            write!(f, "{op}(")?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")
        };
        match self {
            Top => f.write_str("top"),
            Bottom => f.write_str("bot"),
            Named(n) => f.write_str(n),
            Neg(c) => write!(f, "neg({c})"),
            And(cs) => list(f, "and", cs),
            Or(cs) => list(f, "or", cs),
            Exists(r, c) => write!(f, "exists({r}, {c})"),
            Forall(r, c) => write!(f, "forall({r}, {c})"),
            AtLeast(n, r, c) => write!(f, "atleast({n}, {r}, {c})"),
            AtMost(n, r, c) => write!(f, "atmost({n}, {r}, {c})"),
        }
    }
}

/// TBox and ABox statements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OntologyAxiom {
    Subclass(ClassExpression, ClassExpression),
    Equiv(ClassExpression, ClassExpression),
    InstanceOf(Individual, ClassExpression),
    RoleFact(String, Individual, Individual),
    Equal(Individual, Individual),
    Different(Individual, Individual),
}

impl OntologyAxiom {
    pub fn is_abox(&self) -> bool {
        !matches!(self, OntologyAxiom::Subclass(..) | OntologyAxiom::Equiv(..))
    }

    pub fn individuals(&self) -> Vec<&Individual> {
        use OntologyAxiom::*;
        match self {
            Subclass(..) | Equiv(..) => vec![],
            InstanceOf(a, _) => vec![a],
            RoleFact(_, a, b) | Equal(a, b) | Different(a, b) => vec![a, b],
        }
    }
}

impl fmt::Display for OntologyAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use OntologyAxiom::*;
        match self {
            Subclass(a, b) => write!(f, "axiom subclass({a}, {b})."),
            Equiv(a, b) => write!(f, "axiom equiv({a}, {b})."),
            InstanceOf(i, c) => write!(f, "fact instance({i}, {c})."),
            RoleFact(r, a, b) => write!(f, "fact role({r}, {a}, {b})."),
            Equal(a, b) => write!(f, "fact equal({a}, {b})."),
            Different(a, b) => write!(f, "fact different({a}, {b})."),
        }
    }
}

/// Concept and role names of the ontology.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
}

impl Signature {
    pub fn contains(&self, name: &str) -> bool {
        self.concepts.contains(name) || self.roles.contains(name)
    }

    /// Declared names plus every name used in `axioms`.
    pub fn from_axioms<'a>(declared: &Signature, axioms: impl IntoIterator<Item = &'a OntologyAxiom>) -> Signature {
        let mut sig = declared.clone();
        for ax in axioms {
            match ax {
                OntologyAxiom::Subclass(a, b) | OntologyAxiom::Equiv(a, b) => {
                    a.collect_names(&mut sig.concepts, &mut sig.roles);
                    b.collect_names(&mut sig.concepts, &mut sig.roles);
                }
                OntologyAxiom::InstanceOf(_, c) => c.collect_names(&mut sig.concepts, &mut sig.roles),
                OntologyAxiom::RoleFact(r, ..) => {
                    sig.roles.insert(r.clone());
                }
                OntologyAxiom::Equal(..) | OntologyAxiom::Different(..) => {}
            }
        }
        sig
    }
}

/// A hybrid MKNF knowledge base `(O, P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub ontology: Vec<OntologyAxiom>,
    pub program: Vec<MknfRule>,
    pub signature: Signature,
    /// DL head predicate to its fresh `NP` predicate; filled by the transforms.
    pub np_map: BTreeMap<String, String>,
}

impl KnowledgeBase {
    /// Builds a knowledge base, resolving predicate kinds against the ontology
    /// signature and checking arities. DL-safety is checked separately by
    /// [`KnowledgeBase::dl_safety_violations`].
    pub fn new(
        ontology: Vec<OntologyAxiom>,
        declared: Signature,
        program: Vec<MknfRule>,
    ) -> Result<Self, ModelError> {
        let signature = Signature::from_axioms(&declared, &ontology);
        if let Some(name) = signature.concepts.intersection(&signature.roles).next() {
            return Err(ModelError::KindConflict(name.clone()));
        }
        let kb = KnowledgeBase { ontology, program, signature, np_map: BTreeMap::new() };
        kb.check_arities()?;
        Ok(kb)
    }

    pub fn empty() -> Self {
        KnowledgeBase {
            ontology: Vec::new(),
            program: Vec::new(),
            signature: Signature::default(),
            np_map: BTreeMap::new(),
        }
    }

    fn check_arities(&self) -> Result<(), ModelError> {
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for atom in self.program.iter().flat_map(MknfRule::atoms) {
            let arity = atom.arity();
            if self.signature.concepts.contains(&atom.predicate) && arity != 1 {
                return Err(ModelError::DlArity { predicate: atom.predicate.clone(), expected: 1, found: arity });
            }
            if self.signature.roles.contains(&atom.predicate) && arity != 2 {
                return Err(ModelError::DlArity { predicate: atom.predicate.clone(), expected: 2, found: arity });
            }
            match seen.get(atom.predicate.as_str()) {
                Some(&a) if a != arity => {
                    return Err(ModelError::ArityMismatch {
                        predicate: atom.predicate.clone(),
                        first: a,
                        second: arity,
                    })
                }
                _ => {
                    seen.insert(&atom.predicate, arity);
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self, predicate: &str) -> PredicateKind {
        if self.signature.contains(predicate) {
            PredicateKind::Dl
        } else {
            PredicateKind::NonDl
        }
    }

    pub fn is_dl(&self, predicate: &str) -> bool {
        self.kind(predicate) == PredicateKind::Dl
    }

    /// All predicates used in the program or the ontology signature.
    pub fn predicates(&self) -> BTreeSet<Predicate> {
        let mut out = BTreeSet::new();
        for atom in self.program.iter().flat_map(MknfRule::atoms) {
            out.insert(Predicate { name: atom.predicate.clone(), arity: atom.arity(), kind: self.kind(&atom.predicate) });
        }
        for c in &self.signature.concepts {
            out.insert(Predicate { name: c.clone(), arity: 1, kind: PredicateKind::Dl });
        }
        for r in &self.signature.roles {
            out.insert(Predicate { name: r.clone(), arity: 2, kind: PredicateKind::Dl });
        }
        out
    }

    /// Every individual named in the rules or the ABox.
    pub fn individuals(&self) -> BTreeSet<Individual> {
        let mut out = BTreeSet::new();
        for atom in self.program.iter().flat_map(MknfRule::atoms) {
            for t in &atom.args {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            }
        }
        for ax in &self.ontology {
            out.extend(ax.individuals().into_iter().cloned());
        }
        out
    }

    /// One entry per rule variable that occurs in no positive non-DL body atom.
    pub fn dl_safety_violations(&self) -> Vec<DlSafetyViolation> {
        let mut out = Vec::new();
        for (index, rule) in self.program.iter().enumerate() {
            let guarded: BTreeSet<&str> = rule
                .k_body
                .iter()
                .filter(|a| !self.is_dl(&a.predicate))
                .flat_map(|a| a.variables())
                .collect();
            for v in rule.variables() {
                if !guarded.contains(v.as_str()) {
                    out.push(DlSafetyViolation { rule_index: index, variable: v });
                }
            }
        }
        out
    }

    pub fn ensure_dl_safe(&self) -> Result<(), ModelError> {
        match self.dl_safety_violations().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(ModelError::Unsafe {
                rule: self.program[v.rule_index].to_string(),
                variable: v.variable,
            }),
        }
    }

    /// `KA(K)`: atoms under `K` in heads and bodies plus the atoms under `not`.
    pub fn k_atoms(&self) -> Result<AtomSet, ModelError> {
        let mut out = AtomSet::new();
        for rule in &self.program {
            for atom in rule.atoms() {
                out.insert(atom.to_ground().ok_or(ModelError::NotGround)?);
            }
        }
        Ok(out)
    }

    /// `S_DL`: the members of `s` whose predicate is a DL predicate.
    pub fn dl_projection(&self, s: &AtomSet) -> AtomSet {
        s.iter().filter(|a| self.is_dl(&a.predicate)).cloned().collect()
    }

    /// The DL predicate an `NP` predicate stands for, if `name` is one.
    pub fn np_source(&self, name: &str) -> Option<&str> {
        self.np_map.iter().find(|(_, np)| np.as_str() == name).map(|(p, _)| p.as_str())
    }

    /// Ontology axioms other than the `¬P ⊑ NP` axioms added by the transforms.
    pub fn base_ontology(&self) -> Vec<OntologyAxiom> {
        self.ontology
            .iter()
            .filter(|ax| !self.is_np_axiom(ax))
            .cloned()
            .collect()
    }

    fn is_np_axiom(&self, ax: &OntologyAxiom) -> bool {
        match ax {
            OntologyAxiom::Subclass(ClassExpression::Neg(p), ClassExpression::Named(np)) => {
                matches!(p.as_ref(), ClassExpression::Named(p) if self.np_map.get(p) == Some(np))
            }
            _ => false,
        }
    }

    fn fresh_name(&self, base: &str) -> String {
        let taken = |n: &str| {
            self.signature.contains(n)
                || self.program.iter().flat_map(MknfRule::atoms).any(|a| a.predicate == n)
                || self.np_map.values().any(|v| v == n)
        };
        if !taken(base) {
            return base.to_string();
        }
        (1..).map(|i| format!("{base}{i}")).find(|n| !taken(n)).expect("unbounded suffix search")
    }

    fn with_np_predicates(&self) -> KnowledgeBase {
        let mut kb = self.clone();
        let np_values: BTreeSet<String> = kb.np_map.values().cloned().collect();
        let heads: BTreeSet<(String, usize)> = kb
            .program
            .iter()
            .filter(|r| kb.is_dl(&r.head.predicate) && !np_values.contains(&r.head.predicate))
            .map(|r| (r.head.predicate.clone(), r.head.arity()))
            .collect();
        for (p, arity) in heads {
            if kb.np_map.contains_key(&p) {
                continue;
            }
            let np = kb.fresh_name(&format!("n_{p}"));
            if arity == 1 {
                kb.signature.concepts.insert(np.clone());
                kb.ontology.push(OntologyAxiom::Subclass(
                    ClassExpression::neg(ClassExpression::named(&p)),
                    ClassExpression::named(&np),
                ));
            } else {
                // ¬R ⊑ NR is not an ALCQ axiom; NR atoms are decided by refuting R.
                kb.signature.roles.insert(np.clone());
            }
            kb.np_map.insert(p, np);
        }
        kb
    }

    /// `K⁺`: adds `¬P ⊑ NP` for every DL predicate occurring in a rule head.
    pub fn transform_plus(&self) -> KnowledgeBase {
        self.with_np_predicates()
    }

    /// `K*`: `K⁺` plus `not NP(t⃗)` in the body of every rule with head `P(t⃗)`.
    pub fn transform_star(&self) -> KnowledgeBase {
        let mut kb = self.with_np_predicates();
        let np_map = kb.np_map.clone();
        for rule in &mut kb.program {
            if let Some(np) = np_map.get(&rule.head.predicate) {
                let guard = Atom::new(np.clone(), rule.head.args.clone());
                if !rule.not_body.contains(&guard) {
                    rule.not_body.push(guard);
                }
            }
        }
        kb
    }

    /// Replaces every rule by all its instantiations over `individuals`.
    pub fn ground(&self, individuals: &BTreeSet<Individual>) -> KnowledgeBase {
        let universe: Vec<Individual> = individuals.iter().cloned().collect();
        let mut program = Vec::new();
        for rule in &self.program {
            for subst in substitutions(&rule.variables(), &universe) {
                program.push(MknfRule {
                    head: rule.head.substitute(&subst).to_atom(),
                    k_body: rule.k_body.iter().map(|a| a.substitute(&subst).to_atom()).collect(),
                    not_body: rule.not_body.iter().map(|a| a.substitute(&subst).to_atom()).collect(),
                });
            }
        }
        KnowledgeBase { program, ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlSafetyViolation {
    pub rule_index: usize,
    pub variable: String,
}

/// Every mapping of `vars` into `universe`, in lexicographic order.
pub fn substitutions(vars: &[String], universe: &[Individual]) -> Vec<Substitution> {
    if vars.is_empty() {
        return vec![Substitution::new()];
    }
    if universe.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; vars.len()];
    loop {
        out.push(vars.iter().cloned().zip(idx.iter().map(|&i| universe[i].clone())).collect());
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < universe.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
