//! Shared error types.

use crate::object::ObjectExpr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TypeError {
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("undeclared object `{0}`")]
    UndeclaredObject(String),
    #[error("composition mismatch: cannot plug output {found} into input {expected}")]
    CompositionMismatch { expected: ObjectExpr, found: ObjectExpr },
    #[error("flavor violation: {0}")]
    FlavorViolation(String),
    #[error("expected a scalar (endomorphism of the unit), found {dom} → {cod}")]
    NotAScalar { dom: ObjectExpr, cod: ObjectExpr },
    #[error("expected an endomorphism, found {dom} → {cod}")]
    NotEndomorphism { dom: ObjectExpr, cod: ObjectExpr },
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("generator `{0}` has no matrix assigned in the model")]
    UnassignedGenerator(String),
    #[error("object `{0}` has no dimension assigned in the model")]
    UnassignedObject(String),
    #[error("model flavor lacks structure for {0}")]
    FlavorViolation(String),
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular: {0}")]
    Singular(String),
}

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("no such rule `{0}`")]
    NoSuchRule(String),
    #[error("rule `{rule}` does not match at position {position:?}")]
    NoMatch { rule: String, position: Vec<usize> },
    #[error("invalid position {position:?}: {reason}")]
    InvalidPosition { position: Vec<usize>, reason: String },
    #[error("rule `{rule}` requires flavor {guard}")]
    GuardViolation { rule: String, guard: String },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("parse error: {0}")]
    Other(String),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Flavor(#[from] crate::flavor::FlavorError),
}
