//! The basis-term language: parsing, evaluation, weights and closed forms.
//!
//! ```text
//! expr   := ['-'] term {('+'|'-') term}
//! term   := factor {'*' factor}
//! factor := base ['^' factor]
//! base   := INTEGER | INTEGER '/' INTEGER | NAME | NAME '(' expr ')' | '(' expr ')'
//! ```
//!
//! Names: `pi gamma catalan ln sqrt exp zeta li3`, any case.

mod ast;
mod basis_file;
mod closed_form;
mod eval;
mod parser;
mod weight;

use thiserror::Error;

use crate::precision::DomainError;

pub use ast::{ExprKind, Func, NamedConst, Sign, Span, TermExpr};
pub use basis_file::{parse_basis_file, BasisFile, BasisFileError};
pub use closed_form::{
    classify_simplicity, format_closed_form, ClosedForm, SimplicityVerdict, SIMPLE_MAX_INTEGER,
    SIMPLE_MAX_TERMS,
};
pub use eval::evaluate;
pub use parser::parse;
pub use weight::{is_algebraic, weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        /// 1-based byte offset.
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown name {name:?} at offset {offset}")]
    UnknownName { name: String, offset: usize },
}

/// A domain error located at the offending subexpression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{error} (at {span})")]
pub struct EvalError {
    pub span: Span,
    pub error: DomainError,
}
