use num_traits::{ToPrimitive, Zero};

use super::ast::{Expr, ExprKind, Func, Symbol};
use super::lexer::{tokenize, Spanned, Token};
use super::{ParseError, ParseErrorKind, Span};
use crate::scalar::Rational;

/// Parses one expression.
///
/// Grammar:
///
/// ```text
/// expr    := ["-"] term (("+" | "-") term)*
/// term    := factor (("*" | "o" | "∘")? factor)*      juxtaposition is "*"
/// factor  := atom ("^" UINT)?                          "hbar" also takes "^-UINT"
/// atom    := "q" | "p" | "rho" | "drho_q" | "drho_p" | "hbar" | "i"
///          | RATIONAL | FUNC "(" expr ("," expr)? ")" | "(" expr ")"
/// FUNC    := "S" | "pb" | "comm" | "dq" | "dp" | "normal"
/// RATIONAL:= ["-"] UINT ["/" UINT]
/// ```
///
/// `*` and `o` may not be mixed within one term without parentheses.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    let t = parser.peek();
    if t.token != Token::Eof {
        return Err(ParseError::syntax(
            t.span,
            format!(
                "unexpected {} after complete expression",
                t.token.describe()
            ),
        ));
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ProductKind {
    Ordinary,
    Weyl,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Token {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].token
    }

    fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token) -> Result<Spanned, ParseError> {
        let t = self.peek().clone();
        if t.token == want {
            Ok(self.bump())
        } else {
            Err(ParseError::syntax(
                t.span,
                format!("expected {}, found {}", want.describe(), t.token.describe()),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let start = self.peek().span;
        let mut lhs =
            if self.peek().token == Token::Minus && !matches!(self.peek_at(1), Token::Number(_)) {
                self.bump();
                let t = self.term()?;
                Expr::new(ExprKind::Neg(Box::new(t)), start)
            } else {
                self.term()?
            };
        loop {
            let op = self.peek().clone();
            let kind: fn(Box<Expr>, Box<Expr>) -> ExprKind = match op.token {
                Token::Plus => ExprKind::Sum,
                Token::Minus => ExprKind::Difference,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::new(kind(Box::new(lhs), Box::new(rhs)), op.span);
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek().token,
            Token::Ident(_) | Token::Number(_) | Token::LParen
        )
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        let mut seen: Option<ProductKind> = None;
        loop {
            let t = self.peek().clone();
            let kind = match t.token {
                Token::Star => {
                    self.bump();
                    ProductKind::Ordinary
                }
                Token::Circle => {
                    self.bump();
                    ProductKind::Weyl
                }
                _ if self.starts_atom() => ProductKind::Ordinary,
                _ => break,
            };
            match seen {
                Some(prev) if prev != kind => {
                    return Err(ParseError::new(
                        ParseErrorKind::Ambiguity,
                        t.span,
                        "ordinary and symmetrized products mixed without parentheses".into(),
                    ));
                }
                _ => seen = Some(kind),
            }
            let rhs = self.factor()?;
            let node = match kind {
                ProductKind::Ordinary => ExprKind::Product(Box::new(lhs), Box::new(rhs)),
                ProductKind::Weyl => ExprKind::WeylProduct(Box::new(lhs), Box::new(rhs)),
            };
            lhs = Expr::new(node, t.span);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().token != Token::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let negative = if self.peek().token == Token::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.peek().clone();
        let Token::Number(n) = t.token else {
            return Err(ParseError::syntax(
                t.span,
                format!("expected an integer exponent, found {}", t.token.describe()),
            ));
        };
        self.bump();
        let value = n
            .to_i32()
            .filter(|v| *v <= 10_000)
            .ok_or_else(|| ParseError::syntax(t.span, format!("exponent `{n}` is too large")))?;
        let is_hbar = base.kind == ExprKind::Symbol(Symbol::Hbar);
        if negative && !is_hbar {
            return Err(ParseError::syntax(
                t.span,
                "negative exponents are only allowed on `hbar`".into(),
            ));
        }
        let exp = if negative { -value } else { value };
        Ok(Expr::new(ExprKind::Power(Box::new(base), exp), caret.span))
    }

    fn rational(&mut self, negative: bool, span: Span) -> Result<Expr, ParseError> {
        let Token::Number(numer) = self.bump().token else {
            unreachable!("caller checked for a number");
        };
        let mut value = Rational::from_integer(numer);
        if self.peek().token == Token::Slash {
            self.bump();
            let t = self.peek().clone();
            let Token::Number(denom) = t.token else {
                return Err(ParseError::syntax(
                    t.span,
                    format!("expected a denominator, found {}", t.token.describe()),
                ));
            };
            self.bump();
            if denom.is_zero() {
                return Err(ParseError::syntax(t.span, "zero denominator".into()));
            }
            value /= Rational::from_integer(denom);
        }
        if negative {
            value = -value;
        }
        Ok(Expr::new(ExprKind::Rational(value), span))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match t.token {
            Token::Number(_) => self.rational(false, t.span),
            Token::Minus if matches!(self.peek_at(1), Token::Number(_)) => {
                self.bump();
                self.rational(true, t.span)
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Token::Ident(name) => {
                self.bump();
                if let Some(func) = Func::from_name(&name) {
                    return self.call(func, t.span);
                }
                match Symbol::from_name(&name) {
                    Some(sym) => Ok(Expr::new(ExprKind::Symbol(sym), t.span)),
                    None => Err(ParseError::syntax(t.span, unknown_symbol(&name))),
                }
            }
            other => Err(ParseError::syntax(
                t.span,
                format!("expected an operand, found {}", other.describe()),
            )),
        }
    }

    fn call(&mut self, func: Func, span: Span) -> Result<Expr, ParseError> {
        let open = self.peek().clone();
        if open.token != Token::LParen {
            return Err(ParseError::syntax(
                open.span,
                format!("`{func}` must be followed by `(`"),
            ));
        }
        self.bump();
        let mut args = vec![self.expr()?];
        while self.peek().token == Token::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        self.expect(Token::RParen)?;
        if args.len() != func.arity() {
            return Err(ParseError::new(
                ParseErrorKind::Arity,
                span,
                format!(
                    "`{func}` takes {} argument{}, got {}",
                    func.arity(),
                    if func.arity() == 1 { "" } else { "s" },
                    args.len()
                ),
            ));
        }
        Ok(Expr::new(ExprKind::Call(func, args), span))
    }
}

fn unknown_symbol(name: &str) -> String {
    let letters = name.chars().all(|c| c == 'q' || c == 'p');
    if letters && name.len() > 1 {
        format!("unknown symbol `{name}` (separate letters with spaces, e.g. `q p`)")
    } else {
        format!("unknown symbol `{name}`")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn sym(s: Symbol) -> ExprKind {
        ExprKind::Symbol(s)
    }

    fn strip(e: &Expr) -> String {
        match &e.kind {
            ExprKind::Symbol(s) => format!("{s:?}"),
            ExprKind::Rational(r) => r.to_string(),
            ExprKind::Neg(a) => format!("neg({})", strip(a)),
            ExprKind::Sum(a, b) => format!("sum({},{})", strip(a), strip(b)),
            ExprKind::Difference(a, b) => format!("diff({},{})", strip(a), strip(b)),
            ExprKind::Product(a, b) => format!("mul({},{})", strip(a), strip(b)),
            ExprKind::WeylProduct(a, b) => format!("o({},{})", strip(a), strip(b)),
            ExprKind::Power(a, k) => format!("pow({},{k})", strip(a)),
            ExprKind::Call(f, args) => format!(
                "{f}({})",
                args.iter().map(strip).collect::<Vec<_>>().join(",")
            ),
        }
    }

    #[test]
    fn power_and_product() {
        assert_eq!(strip(&parse("q^2 * p").unwrap()), "mul(pow(Q,2),P)");
        assert_eq!(strip(&parse("q^2 p").unwrap()), "mul(pow(Q,2),P)");
    }

    #[test]
    fn symmetrizer_call_on_word() {
        assert_eq!(
            strip(&parse("S(q p q p)").unwrap()),
            "S(mul(mul(mul(Q,P),Q),P))"
        );
    }

    #[test]
    fn bracket_call() {
        assert_eq!(
            strip(&parse("pb(q^3, p^3)").unwrap()),
            "pb(pow(Q,3),pow(P,3))"
        );
    }

    #[test]
    fn mixed_products_are_ambiguous() {
        let err = parse("q o p * q").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Ambiguity);
        assert_eq!(err.span, Span { line: 1, column: 7 });
        assert!(parse("(q o p) * q").is_ok());
        let err = parse("2 q o p").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Ambiguity);
    }

    #[test]
    fn rationals() {
        let e = parse("-3/4").unwrap();
        assert_eq!(e.kind, ExprKind::Rational(rational(-3, 4)));
        assert_eq!(strip(&parse("q - 1/2").unwrap()), "diff(Q,1/2)");
        assert_eq!(strip(&parse("-q p").unwrap()), "neg(mul(Q,P))");
        assert!(parse("1/0").is_err());
    }

    #[test]
    fn arity_errors() {
        let err = parse("pb(q)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Arity);
        let err = parse("S(q, p)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Arity);
    }

    #[test]
    fn hbar_negative_power_only() {
        assert_eq!(strip(&parse("hbar^-1").unwrap()), "pow(Hbar,-1)");
        assert!(parse("q^-1").is_err());
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse("q +\n  )").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Syntax);
        assert_eq!(err.span, Span { line: 2, column: 3 });
        let err = parse("qp").unwrap_err();
        assert!(err.message.contains("separate letters"));
        assert_eq!(parse("i").unwrap().kind, sym(Symbol::I));
    }
}
