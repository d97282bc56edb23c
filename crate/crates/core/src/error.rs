use thiserror::Error;

use crate::algebra::Degree;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("denominator of {0} is even")]
    EvenDenominator(String),
    #[error("boundaries-not-cycles: Z·B has a nonzero entry in column {column}")]
    BoundariesNotCycles { column: usize },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("non-positive-generator: {name} has positivity weight {weight}")]
    NonPositiveGenerator { name: String, weight: i64 },
    #[error("degree-mismatch: {what} has degree {found}, expected {expected}")]
    DegreeMismatch {
        what: String,
        expected: Degree,
        found: Degree,
    },
    #[error("non-homogeneous element: {0}")]
    NotHomogeneous(String),
    #[error("relation-not-preserved: {relation} maps to {image}")]
    RelationNotPreserved { relation: String, image: String },
    #[error("degree-audit-failed: {0}")]
    DegreeAuditFailed(String),
    #[error("target-not-cycle: {0}")]
    TargetNotCycle(String),
    #[error("elimination-failure in internal degree {degree}: no 2-local unit pivot for {monomial}")]
    EliminationFailure { degree: i64, monomial: String },
    #[error("basis-rank-failure in internal degree {degree}: quotient rank {found}, basis size {expected}")]
    BasisRankFailure {
        degree: i64,
        expected: usize,
        found: usize,
    },
    #[error("not-closed: {0}")]
    NotClosed(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("parse error in {input:?}: {message}")]
    Parse { input: String, message: String },
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("configuration error at {path}: {message}")]
    Config { path: String, message: String },
    #[error("window error: {0}")]
    Window(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
