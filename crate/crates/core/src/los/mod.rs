//! A first-order language with equality, finite structures, ultraproducts
//! over finite index sets, and the truth lemma.
//!
//! The core connectives are `not`, `or` and `exists`; `and`, `implies` and
//! `forall` are abbreviations expanded by the parser and by the
//! [`Formula`] constructors. For a family of structures `(M_i)` indexed by
//! `I` and an ultrafilter `U` on `I`, a formula is *true along `U`* when the
//! set of indices where it holds belongs to `U`. The truth lemma says this
//! coincides with truth in the ultraproduct; [`los_verify`] computes both
//! sides, plus the inductive argument, on concrete instances.
//!
//! Formulas use the grammar documented on [`parse_formula`]; structures are
//! read from JSON (see [`StructureDoc`]).

mod parser;
mod random;
mod structure;
mod syntax;
mod ultra;

pub use parser::parse_formula;
pub use random::{close_sentence, random_case, random_cases, random_formula, random_structure, CaseShape, LosCase};
pub use structure::{eval, ElementDoc, Env, Signature, Structure, StructureDoc};
pub use syntax::Formula;
pub use ultra::{
    holds_along, los_verify, transfer_check, truth_set, ultraproduct, Choices, Isomorphism, LosReport, Ultraproduct,
    MAX_PRODUCT,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LosError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("relation `{relation}` takes {expected} arguments, got {found}")]
    Arity { relation: String, expected: usize, found: usize },
    #[error("invalid structure: {0}")]
    Structure(String),
    #[error("invalid family: {0}")]
    Family(String),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("malformed structure document: {0}")]
    Format(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
