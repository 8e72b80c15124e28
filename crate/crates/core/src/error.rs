use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("knowledge base is not ground; ground it first")]
    NotGround,
    #[error("predicate `{predicate}` is used with arity {first} and {second}")]
    ArityMismatch { predicate: String, first: usize, second: usize },
    #[error("DL predicate `{predicate}` must have arity {expected}, found {found}")]
    DlArity { predicate: String, expected: usize, found: usize },
    #[error("`{0}` is used both as a concept and as a role")]
    KindConflict(String),
    #[error("rule `{rule}` is not DL-safe: variable {variable} occurs in no positive non-DL body atom")]
    Unsafe { rule: String, variable: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("entailment query `{0}` is not ground")]
    NonGround(String),
    #[error("`{0}` is not a DL predicate")]
    NonDl(String),
    #[error("`{0}` has arity {1}; only concepts (1) and roles (2) reach the ontology")]
    BadArity(String, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error("relevant individual set exceeds the cap of {0}")]
    TooManyIndividuals(usize),
    #[error("outer iteration exceeds the cap of {0}")]
    TooManyOuterIterations(usize),
}
