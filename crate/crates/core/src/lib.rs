//! Query answering for hybrid MKNF knowledge bases under the well-founded
//! semantics.
//!
//! A knowledge base couples non-monotonic rules with an ALCQ ontology.
//! [`engine`] answers queries goal-directedly over the individuals relevant
//! to them; [`oracle`] computes the whole well-founded model bottom-up and is
//! the reference the engine is checked against.

pub mod engine;
pub mod error;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod tableau;

pub use error::{EngineError, ModelError, TableauError};
pub use model::{
    Atom, AtomSet, ClassExpression, GroundAtom, Individual, KnowledgeBase, MknfRule, OntologyAxiom,
    Predicate, PredicateKind, Signature, Term,
};
pub use oracle::{TruthValue, WellFoundedModel};
