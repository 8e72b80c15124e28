//! Test support for the mknf workspace.
//!
//! Everything here is independent of the reasoning code under test: the
//! well-founded semantics for normal programs is computed with unfounded
//! sets, and ontology entailment is checked by brute-force enumeration of
//! small finite interpretations.

pub mod cases;
pub mod enumerate;
pub mod fixtures;
pub mod generate;
pub mod wfs;
