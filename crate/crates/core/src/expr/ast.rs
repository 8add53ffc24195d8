use std::fmt;

use crate::scalar::Rational;

use super::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Q,
    P,
    Rho,
    DrhoQ,
    DrhoP,
    Hbar,
    I,
}

impl Symbol {
    pub fn from_name(s: &str) -> Option<Symbol> {
        Some(match s {
            "q" => Symbol::Q,
            "p" => Symbol::P,
            "rho" => Symbol::Rho,
            "drho_q" => Symbol::DrhoQ,
            "drho_p" => Symbol::DrhoP,
            "hbar" => Symbol::Hbar,
            "i" => Symbol::I,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    /// Symmetrizer.
    S,
    /// Symmetrized Poisson bracket.
    Pb,
    /// `(1/iħ)` times the commutator.
    Comm,
    Dq,
    Dp,
    Normal,
}

impl Func {
    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "S" => Func::S,
            "pb" => Func::Pb,
            "comm" => Func::Comm,
            "dq" => Func::Dq,
            "dp" => Func::Dp,
            "normal" => Func::Normal,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::S => "S",
            Func::Pb => "pb",
            Func::Comm => "comm",
            Func::Dq => "dq",
            Func::Dp => "dp",
            Func::Normal => "normal",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Pb | Func::Comm => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Symbol(Symbol),
    Rational(Rational),
    Neg(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    WeylProduct(Box<Expr>, Box<Expr>),
    /// Exponent is non-negative except on `hbar`.
    Power(Box<Expr>, i32),
    Call(Func, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Expr {
        Expr { kind, span }
    }
}
