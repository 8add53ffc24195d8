//! Surface syntax for operator expressions: parser, evaluator and printers.
//!
//! ```
//! use opalg_core::expr::{evaluate_str, print, Format};
//!
//! let x = evaluate_str("normal(p q)").unwrap();
//! assert_eq!(print(&x, Format::Text), "q p - i hbar");
//! ```

use std::fmt;

use thiserror::Error;

use crate::error::AlgebraError;

pub mod ast;
mod eval;
pub mod lexer;
mod parser;
mod print;

pub use eval::{evaluate, evaluate_str, EvalError};
pub use parser::parse;
pub use print::{print, to_json, Format};

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Arity,
    Ambiguity,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Arity => "arity error",
            ParseErrorKind::Ambiguity => "ambiguous expression",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at {span}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
    pub message: String,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, span: Span, message: String) -> Self {
        ParseError {
            kind,
            span,
            message,
        }
    }

    pub fn lexical(span: Span, message: String) -> Self {
        ParseError::new(ParseErrorKind::Lexical, span, message)
    }

    pub fn syntax(span: Span, message: String) -> Self {
        ParseError::new(ParseErrorKind::Syntax, span, message)
    }
}

/// Either stage of `parse → evaluate` failing.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl From<(Span, AlgebraError)> for EvalError {
    fn from((span, source): (Span, AlgebraError)) -> Self {
        EvalError { span, source }
    }
}
