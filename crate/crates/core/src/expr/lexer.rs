use num_bigint::BigInt;

use super::{ParseError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Number(BigInt),
    Plus,
    Minus,
    Star,
    Circle,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("`{s}`"),
            Token::Number(n) => format!("number `{n}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Circle => "`o`".into(),
            Token::Caret => "`^`".into(),
            Token::Slash => "`/`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub span: Span,
}

pub fn tokenize(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = Span { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                column += 1;
            }
            if chars
                .peek()
                .is_some_and(|d| d.is_alphabetic() || *d == '_' || *d == '.')
            {
                let bad = *chars.peek().unwrap();
                return Err(ParseError::lexical(
                    Span { line, column },
                    format!("unexpected `{bad}` after number `{digits}` (only rational literals are accepted)"),
                ));
            }
            let value = digits.parse::<BigInt>().expect("ascii digits");
            out.push(Spanned {
                token: Token::Number(value),
                span,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                ident.push(d);
                chars.next();
                column += 1;
            }
            let token = if ident == "o" {
                Token::Circle
            } else {
                Token::Ident(ident)
            };
            out.push(Spanned { token, span });
            continue;
        }
        let token = match c {
            '+' => Token::Plus,
            '-' | '−' => Token::Minus,
            '*' | '·' => Token::Star,
            '∘' => Token::Circle,
            '^' => Token::Caret,
            '/' => Token::Slash,
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            other => {
                return Err(ParseError::lexical(
                    span,
                    format!("unexpected character `{other}`"),
                ));
            }
        };
        chars.next();
        column += 1;
        out.push(Spanned { token, span });
    }
    out.push(Spanned {
        token: Token::Eof,
        span: Span { line, column },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<Token> {
        tokenize(s).unwrap().into_iter().map(|t| t.token).collect()
    }

    #[test]
    fn circle_and_synonyms() {
        assert_eq!(
            kinds("q o p ∘ q"),
            vec![
                Token::Ident("q".into()),
                Token::Circle,
                Token::Ident("p".into()),
                Token::Circle,
                Token::Ident("q".into()),
                Token::Eof
            ]
        );
    }

    #[test]
    fn spans_track_lines() {
        let toks = tokenize("q\n  + p").unwrap();
        assert_eq!(toks[1].span, Span { line: 2, column: 3 });
        assert_eq!(toks[2].span, Span { line: 2, column: 5 });
    }

    #[test]
    fn rejects_floats_and_junk() {
        let err = tokenize("1.5").unwrap_err();
        assert_eq!(err.span, Span { line: 1, column: 2 });
        assert!(tokenize("q $ p").is_err());
    }
}
