//! Boolean functions over GF(2): parsing, truth tables, algebraic normal
//! forms, and the decompositions the protocols consume.
//!
//! A function arrives as an expression over named variables, each owned by
//! one party. [`parse_expression`] builds its full truth table, [`to_anf`]
//! converts that to the XOR-of-monomials normal form, and the two
//! decomposition operations split the ANF into products that cross party
//! boundaries one AND at a time:
//!
//! * [`inner_product_decomposition`]: for two parties, `f = ⊕ᵢ Pᵢ(x⃗)·Qᵢ(y⃗)`.
//! * [`degree2_decomposition`]: for n ≥ 3 parties whose monomials each span
//!   at most two parties, grouped into per-pair buckets.

mod anf;
mod decompose;
mod function;
mod parser;

pub use anf::{eval_anf, to_anf, Anf, Monomial};
pub use decompose::{
    degree2_decomposition, inner_product_decomposition, Decomposition, Degree2Form,
};
pub use function::{BooleanFunction, FunctionFile, PartySpec};
pub use parser::parse_expression;

use thiserror::Error;

/// Truth tables are capped at 2^20 rows so exhaustive verification stays
/// feasible.
pub const MAX_VARIABLES: usize = 20;

/// Errors from parsing and decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoolFnError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared variable {name:?} at position {pos}")]
    UndeclaredVariable { name: String, pos: usize },
    #[error("variable {0:?} declared more than once")]
    DuplicateVariable(String),
    #[error("party {0:?} declared more than once")]
    DuplicateParty(String),
    #[error("{0} variables exceed the cap of {MAX_VARIABLES}")]
    TooManyVariables(usize),
    #[error("expected exactly 2 parties, found {0}")]
    WrongPartyCount(usize),
    #[error("degree-2 decomposition needs at least 3 parties, found {0}")]
    TooFewParties(usize),
    #[error("monomial {monomial:?} spans {span} parties; degree-2 form allows at most 2")]
    Degree2Violation { monomial: Vec<String>, span: usize },
    #[error("assignment is missing variable {0:?}")]
    MissingVariable(String),
}
