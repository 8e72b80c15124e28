//! Curated ALCQ entailment cases written in ontology syntax.

use mknf::parser::{parse_literal, parse_ontology, Literal};
use mknf::tableau::{AboxView, EntailmentQuery, Reasoner};
use mknf::AtomSet;

use crate::enumerate;

/// The expected tableau verdict for a case.
pub enum Expect {
    Entailed(&'static str),
    NotEntailed(&'static str),
    Inconsistent,
    Consistent,
}

use Expect::*;

pub const CASES: &[(&str, &str, Expect)] = &[
    ("subsumption", "axiom subclass(a, b). fact instance(x, a).", Entailed("b(x)")),
    ("subsumption is not negation", "axiom subclass(a, b). fact instance(x, a).", NotEntailed("neg(b(x))")),
    ("unfolding chain", "axiom subclass(a, b). axiom subclass(b, c). fact instance(x, a).", Entailed("c(x)")),
    ("no converse unfolding", "axiom subclass(a, b). fact instance(x, b).", NotEntailed("a(x)")),
    (
        "equivalence with conjunction",
        "axiom equiv(a, and(b, c)). fact instance(x, b). fact instance(x, c).",
        Entailed("a(x)"),
    ),
    ("existential lhs", "axiom subclass(exists(r, top), d). fact role(r, x, y).", Entailed("d(x)")),
    (
        "qualified existential lhs",
        "axiom subclass(exists(r, a), d). fact role(r, x, y). fact instance(y, a).",
        Entailed("d(x)"),
    ),
    (
        "qualified existential needs filler",
        "axiom subclass(exists(r, a), d). fact role(r, x, y).",
        NotEntailed("d(x)"),
    ),
    ("universal propagates", "fact instance(x, forall(r, a)). fact role(r, x, y).", Entailed("a(y)")),
    (
        "exists against forall clash",
        "fact instance(x, forall(r, a)). fact instance(x, exists(r, neg(a))).",
        Inconsistent,
    ),
    (
        "exists and forall combine",
        "axiom subclass(exists(r, and(a, b)), d). fact instance(x, exists(r, a)). fact instance(x, forall(r, b)).",
        Entailed("d(x)"),
    ),
    (
        "at-most merges fillers",
        "fact instance(x, atmost(1, r, top)). fact role(r, x, y). fact role(r, x, z).",
        Entailed("equal(y, z)"),
    ),
    ("no unique names without at-most", "fact role(r, x, y). fact role(r, x, z).", NotEntailed("equal(y, z)")),
    (
        "merge against distinctness",
        "fact instance(x, atmost(1, r, top)). fact role(r, x, y). fact role(r, x, z). fact different(y, z).",
        Inconsistent,
    ),
    (
        "qualified at-most merges",
        "fact instance(x, atmost(1, r, a)). fact role(r, x, y). fact role(r, x, z). fact instance(y, a). fact instance(z, a).",
        Entailed("equal(y, z)"),
    ),
    (
        "qualified at-most ignores other fillers",
        "fact instance(x, atmost(1, r, a)). fact role(r, x, y). fact role(r, x, z). fact instance(y, a).",
        NotEntailed("equal(y, z)"),
    ),
    (
        "merged nodes share labels",
        "fact instance(x, atmost(1, r, top)). fact role(r, x, y). fact role(r, x, z). fact instance(y, b).",
        Entailed("b(z)"),
    ),
    ("at-least against at-most", "fact instance(x, atleast(2, r, top)). fact instance(x, atmost(1, r, top)).", Inconsistent),
    (
        "at-least through subsumption",
        "axiom subclass(atleast(2, r, b), d). axiom subclass(a, b). fact instance(x, atleast(2, r, a)).",
        Entailed("d(x)"),
    ),
    (
        "at-least bound not reached",
        "axiom subclass(atleast(3, r, top), d). fact instance(x, atleast(2, r, top)).",
        NotEntailed("d(x)"),
    ),
    ("disjointness", "axiom subclass(a, neg(b)). fact instance(x, a).", Entailed("neg(b(x))")),
    ("disjointness clash", "axiom subclass(a, neg(b)). fact instance(x, a). fact instance(x, b).", Inconsistent),
    (
        "reasoning by cases",
        "axiom subclass(a, or(b, c)). axiom subclass(b, d). axiom subclass(c, d). fact instance(x, a).",
        Entailed("d(x)"),
    ),
    ("disjunct not forced", "axiom subclass(a, or(b, c)). fact instance(x, a).", NotEntailed("b(x)")),
    ("cyclic existential is satisfiable", "axiom subclass(a, exists(r, a)). fact instance(x, a).", Consistent),
    (
        "cyclic existential adds nothing",
        "axiom subclass(a, exists(r, a)). axiom subclass(b, c). fact instance(x, a).",
        NotEntailed("c(x)"),
    ),
    ("general existential axiom", "concept b. axiom subclass(top, exists(r, top)). fact instance(x, a).", NotEntailed("b(x)")),
    ("asserted role", "fact role(r, x, y).", Entailed("r(x, y)")),
    ("role through equality", "fact role(r, x, y). fact equal(y, z).", Entailed("r(x, z)")),
    ("no inverse role", "fact role(r, x, y).", NotEntailed("r(y, x)")),
    ("negated role from empty universal", "fact instance(x, forall(r, bot)). fact instance(y, top).", Entailed("neg(r(x, y))")),
    (
        "negated role from universal",
        "fact instance(x, forall(r, neg(a))). fact instance(y, a).",
        Entailed("neg(r(x, y))"),
    ),
    ("equality carries labels", "fact equal(x, y). fact instance(x, a).", Entailed("a(y)")),
    ("distinct individuals", "fact different(x, y).", NotEntailed("equal(x, y)")),
    ("no unique names", "fact instance(x, a). fact instance(y, a).", NotEntailed("equal(x, y)")),
    (
        "merge against complement",
        "fact instance(x, atmost(1, r, top)). fact role(r, x, y). fact role(r, x, z). fact instance(y, a). fact instance(z, neg(a)).",
        Inconsistent,
    ),
    ("qualified bounds coexist", "fact instance(x, atmost(1, r, a)). fact instance(x, atleast(2, r, top)).", Consistent),
    (
        "nested existentials",
        "axiom subclass(a, exists(r, exists(s, b))). axiom subclass(exists(s, b), c). axiom subclass(exists(r, c), d). fact instance(x, a).",
        Entailed("d(x)"),
    ),
    ("at-most zero", "fact instance(x, atmost(0, r, a)). fact role(r, x, y).", Entailed("neg(a(y))")),
    ("negated equivalence", "axiom equiv(a, neg(b)). fact instance(x, neg(a)).", Entailed("b(x)")),
];

pub fn query(text: &str) -> EntailmentQuery {
    match parse_literal(text).expect("case queries parse") {
        Literal::Positive(a) => EntailmentQuery::Positive(a.to_ground().expect("ground")),
        Literal::Negative(a) => EntailmentQuery::Negative(a.to_ground().expect("ground")),
        Literal::Equality(x, y) => EntailmentQuery::Equality(x, y),
    }
}

/// Exhaustive search stays fast with one role and few concepts.
fn enumerable(sig: &mknf::Signature) -> bool {
    sig.roles.len() <= 1 && sig.concepts.len() <= 3
}

/// Outcome of running every curated case.
#[derive(Debug, Default)]
pub struct Report {
    pub total: usize,
    pub cross_checked: usize,
    pub failures: Vec<String>,
}

/// Runs each case through the tableau and, where the signature allows,
/// through the domain-3 enumerator.
pub fn run() -> Report {
    let mut report = Report { total: CASES.len(), ..Default::default() };
    for (name, text, expect) in CASES {
        let parsed = parse_ontology(text);
        if !parsed.diagnostics.is_empty() {
            report.failures.push(format!("{name}: {:?}", parsed.diagnostics));
            continue;
        }
        let reasoner = Reasoner::new(&parsed.axioms, &parsed.signature);
        let view = AboxView::new(&parsed.axioms, AtomSet::new());
        let check = enumerable(&parsed.signature);
        let (want, got, brute) = match expect {
            Expect::Entailed(q) | Expect::NotEntailed(q) => {
                let q = query(q);
                let got = reasoner.entails(&view, &q).map_err(|e| e.to_string());
                (matches!(expect, Expect::Entailed(_)), got, check.then(|| enumerate::entails(&parsed.axioms, &q, 3)))
            }
            Expect::Inconsistent | Expect::Consistent => {
                let got = reasoner.consistent(&view).map_err(|e| e.to_string());
                (matches!(expect, Expect::Consistent), got, check.then(|| enumerate::has_model(&parsed.axioms, 3)))
            }
        };
        match got {
            Ok(g) if g != want => report.failures.push(format!("{name}: tableau says {g}, expected {want}")),
            Err(e) => report.failures.push(format!("{name}: {e}")),
            Ok(_) => {}
        }
        if let Some(b) = brute {
            report.cross_checked += 1;
            if b != want {
                report.failures.push(format!("{name}: enumerator says {b}, expected {want}"));
            }
        }
    }
    report
}
