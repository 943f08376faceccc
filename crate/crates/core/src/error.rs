use thiserror::Error;

use crate::instance::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("`{u}` and `{v}` are not adjacent")]
    NotAnEdge { u: String, v: String },

    #[error("invalid instance: {} violation(s), first: {}", .0.len(), .0[0])]
    InvalidInstance(Vec<Violation>),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("instance is not bipartite: {0}")]
    NotBipartite(String),

    #[error("instance has {vertices} vertices, exhaustive cap is {cap}")]
    CapExceeded { vertices: usize, cap: usize },

    #[error("matching is not popular")]
    NotPopular,

    #[error("witness value {0} outside {{-1, 0, 1}}")]
    WitnessRange(i64),

    #[error("witness has {got} entries, instance has {expected} vertices")]
    WitnessLength { got: usize, expected: usize },

    #[error("witness search budget of {0} propagations exhausted")]
    BudgetExhausted(u64),

    #[error("clause {clause} has {got} variables, expected 3")]
    ClauseArity { clause: usize, got: usize },

    #[error("clause {clause} repeats variable `{name}`")]
    RepeatedVariableInClause { clause: usize, name: String },

    #[error("formula has no clauses")]
    EmptyFormula,

    #[error("formula has {got} variables, brute force limit is {limit}")]
    TooManyVariables { got: usize, limit: usize },

    #[error("assignment does not make exactly one variable true in clause {0}")]
    NotOneInThree(usize),

    #[error("assignment covers {got} variables, formula has {expected}")]
    AssignmentLength { got: usize, expected: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
