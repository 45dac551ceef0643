//! A calculator for morphisms in braided, balanced, ribbon, and dagger
//! monoidal categories with duals.
//!
//! Terms ([`term::Term`]) are syntax trees over a [`signature::Signature`]
//! whose [`flavor::Flavor`] gates which structural constructors typecheck.
//! They can be normalized and compared by rewriting ([`rewrite`]), evaluated
//! in concrete finite-dimensional models ([`model`], [`builtins`]), checked
//! against the axioms ([`validate`]), and exercised against a catalog of
//! categorical laws ([`laws`]). [`parse`] and [`print`] give the ASCII
//! surface syntax used by the `braidcalc` command-line tool.

pub mod builtins;
pub mod derived;
pub mod error;
pub mod flavor;
pub mod laws;
pub mod matrix;
pub mod model;
pub mod object;
pub mod parse;
pub mod print;
pub mod rewrite;
pub mod sampling;
pub mod signature;
pub mod term;
pub mod validate;

pub use error::{EvalError, ParseError, RewriteError, TypeError};
pub use flavor::{DaggerType, Flavor};
pub use object::{Atom, DualMark, ObjectExpr};
pub use signature::{GeneratorDecl, Signature};
pub use term::{typecheck, Boundary, Term};
