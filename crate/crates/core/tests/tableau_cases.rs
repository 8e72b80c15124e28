//! Curated ALCQ entailment cases, checked against the tableau and, when the
//! signature is small enough, against exhaustive model search.

use mknf::tableau::{AboxView, EntailmentQuery, Reasoner};
use mknf::AtomSet;
use mknf_testkit::{cases, enumerate};

#[test]
fn curated_cases() {
    let report = cases::run();
    assert!(report.total >= 30);
    assert!(report.failures.is_empty(), "{:#?}", report.failures);
    assert!(report.cross_checked >= 30, "only {} cases cross-checked", report.cross_checked);
}

mod random {
    use super::*;
    use mknf::{ClassExpression as C, GroundAtom, OntologyAxiom, Signature};
    use proptest::prelude::*;

    fn concept() -> impl Strategy<Value = C> {
        let leaf = prop_oneof![Just(C::named("a")), Just(C::named("b")), Just(C::Top)];
        leaf.prop_recursive(2, 6, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(C::neg),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| C::And(vec![x, y])),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| C::Or(vec![x, y])),
                inner.clone().prop_map(|c| C::exists("r", c)),
                inner.clone().prop_map(|c| C::forall("r", c)),
                (1u32..3, inner.clone()).prop_map(|(n, c)| C::at_least(n, "r", c)),
                (0u32..2, inner).prop_map(|(n, c)| C::at_most(n, "r", c)),
            ]
        })
    }

    fn individual() -> impl Strategy<Value = mknf::Individual> {
        prop_oneof![Just("x".into()), Just("y".into())]
    }

    fn axiom() -> impl Strategy<Value = OntologyAxiom> {
        prop_oneof![
            (concept(), concept()).prop_map(|(x, y)| OntologyAxiom::Subclass(x, y)),
            (individual(), concept()).prop_map(|(i, c)| OntologyAxiom::InstanceOf(i, c)),
            (individual(), individual()).prop_map(|(i, j)| OntologyAxiom::RoleFact("r".into(), i, j)),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        /// A small model means the tableau must find the ontology consistent,
        /// and an entailment claimed by the tableau has no small countermodel.
        #[test]
        fn tableau_is_sound_against_small_models(axioms in prop::collection::vec(axiom(), 1..4), pos in any::<bool>()) {
            let mut axioms = axioms;
            axioms.push(OntologyAxiom::InstanceOf("x".into(), C::Top));
            let declared = Signature { concepts: ["a".into(), "b".into()].into(), roles: ["r".into()].into() };
            let sig = Signature::from_axioms(&declared, &axioms);
            let reasoner = Reasoner::new(&axioms, &sig);
            let view = AboxView::new(&axioms, AtomSet::new());
            let consistent = reasoner.consistent(&view).unwrap();
            if enumerate::has_model(&axioms, 2) {
                prop_assert!(consistent);
            }
            if !consistent {
                prop_assert!(!enumerate::has_model(&axioms, 3));
            }
            let atom = GroundAtom::new("a", &["x"]);
            let q = if pos { EntailmentQuery::Positive(atom) } else { EntailmentQuery::Negative(atom) };
            if reasoner.entails(&view, &q).unwrap() {
                prop_assert!(enumerate::entails(&axioms, &q, 2));
            }
        }
    }
}
