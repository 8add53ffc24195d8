use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::free::FreePolynomial;
use crate::poly::Polynomial;
use crate::scalar::{format_rational, ComplexRational, HbarSeries, Rational};
use crate::weyl::{WeylMonomial, WeylPolynomial};
use crate::word::{runs, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(format!(
                "unknown format `{other}` (expected text, latex or json)"
            )),
        }
    }
}

/// Canonical rendering. Text output parses back to the same value.
pub fn print(x: &Polynomial, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(&to_json(x)).expect("plain data serializes"),
        Format::Text | Format::Latex => {
            let style = if format == Format::Text {
                &TEXT
            } else {
                &LATEX
            };
            let terms = match x {
                Polynomial::Free(f) => free_terms(f, style),
                Polynomial::Weyl(w) => weyl_terms(w, style),
            };
            join_terms(terms)
        }
    }
}

struct Style {
    letter: fn(Letter) -> &'static str,
    power: fn(&str, u32) -> String,
    hbar_power: fn(i32) -> String,
    rational: fn(&Rational) -> String,
    imag: &'static str,
    circle: &'static str,
    complex_open: &'static str,
    complex_close: &'static str,
    group_open: &'static str,
    group_close: &'static str,
}

const TEXT: Style = Style {
    letter: Letter::name,
    power: |base, k| format!("{base}^{k}"),
    hbar_power: |k| {
        if k == 1 {
            "hbar".into()
        } else {
            format!("hbar^{k}")
        }
    },
    rational: |r| {
        if r.is_integer() {
            format_rational(r)
        } else {
            format!("({})", format_rational(r))
        }
    },
    imag: "i",
    circle: " o ",
    complex_open: "(",
    complex_close: ")",
    group_open: "(",
    group_close: ")",
};

const LATEX: Style = Style {
    letter: |l| match l {
        Letter::Q => "\\hat q",
        Letter::P => "\\hat p",
        Letter::Rho => "\\hat\\rho",
        Letter::DrhoQ => "\\frac{\\partial \\hat\\rho}{\\partial \\hat q}",
        Letter::DrhoP => "\\frac{\\partial \\hat\\rho}{\\partial \\hat p}",
    },
    power: |base, k| {
        if base.starts_with("\\frac") {
            format!("\\left({base}\\right)^{{{k}}}")
        } else {
            format!("{base}^{{{k}}}")
        }
    },
    hbar_power: |k| {
        if k == 1 {
            "\\hbar".into()
        } else {
            format!("\\hbar^{{{k}}}")
        }
    },
    rational: |r| {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
        }
    },
    imag: "i",
    circle: " \\circ ",
    complex_open: "\\left(",
    complex_close: "\\right)",
    group_open: "\\left(",
    group_close: "\\right)",
};

/// A rendered term: sign plus magnitude.
struct Term {
    negative: bool,
    body: String,
}

fn join_terms(terms: Vec<Term>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        match (i, t.negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&t.body);
    }
    out
}

/// Splits `c ħ^k` into a sign and the list of coefficient factors.
fn coefficient_factors(c: &ComplexRational, power: i32, style: &Style) -> (bool, Vec<String>) {
    let mut factors = Vec::new();
    let negative;
    if c.im.is_zero() || c.re.is_zero() {
        let (value, imaginary) = if c.im.is_zero() {
            (&c.re, false)
        } else {
            (&c.im, true)
        };
        negative = value.is_negative();
        let mag = value.abs();
        if !mag.is_one() {
            factors.push((style.rational)(&mag));
        }
        if imaginary {
            factors.push(style.imag.to_string());
        }
    } else {
        negative = false;
        let sign = if c.im.is_negative() { "-" } else { "+" };
        let re = if c.re.is_negative() {
            format!("-{}", plain_rational(&c.re.abs(), style))
        } else {
            plain_rational(&c.re, style)
        };
        let im_mag = c.im.abs();
        let im = if im_mag.is_one() {
            style.imag.to_string()
        } else {
            format!("{} {}", plain_rational(&im_mag, style), style.imag)
        };
        factors.push(format!(
            "{}{re} {sign} {im}{}",
            style.complex_open, style.complex_close
        ));
    }
    if power != 0 {
        factors.push((style.hbar_power)(power));
    }
    (negative, factors)
}

fn plain_rational(r: &Rational, style: &Style) -> String {
    if std::ptr::eq(style, &TEXT) {
        format_rational(r)
    } else {
        (style.rational)(r)
    }
}

fn word_factor(w: &Word, style: &Style) -> Option<String> {
    if w.is_empty() {
        return None;
    }
    let parts: Vec<String> = runs(w.letters())
        .into_iter()
        .map(|(l, k)| {
            let base = (style.letter)(l);
            if k == 1 {
                base.to_string()
            } else {
                (style.power)(base, k as u32)
            }
        })
        .collect();
    Some(parts.join(" "))
}

fn weyl_factors(m: &WeylMonomial, style: &Style) -> Vec<String> {
    let mut parts = Vec::new();
    for (letter, k) in [(Letter::Q, m.n), (Letter::P, m.m)] {
        match k {
            0 => {}
            1 => parts.push((style.letter)(letter).to_string()),
            _ => parts.push((style.power)((style.letter)(letter), k)),
        }
    }
    if let Some(d) = m.deriv {
        parts.push((style.letter)(d.letter()).to_string());
    }
    parts
}

fn assemble(negative: bool, mut coeff: Vec<String>, operator: Option<String>) -> Term {
    let body = match (coeff.is_empty(), operator) {
        (true, None) => "1".to_string(),
        (true, Some(op)) => op,
        (false, None) => coeff.join(" "),
        (false, Some(op)) => {
            coeff.push(op);
            coeff.join(" ")
        }
    };
    Term { negative, body }
}

// Longest words first, then lexicographic with q before p; within a word,
// ascending powers of ħ.
fn free_terms(f: &FreePolynomial, style: &Style) -> Vec<Term> {
    let mut terms: Vec<_> = f.terms().collect();
    terms.sort_by(|(a, _), (b, _)| {
        b.len()
            .cmp(&a.len())
            .then_with(|| a.letters().cmp(b.letters()))
    });
    let mut out = Vec::new();
    for (w, c) in terms {
        for (power, value) in c.iter() {
            let (negative, factors) = coefficient_factors(value, power, style);
            out.push(assemble(negative, factors, word_factor(w, style)));
        }
    }
    out
}

fn weyl_terms(x: &WeylPolynomial, style: &Style) -> Vec<Term> {
    let mut terms: Vec<_> = x.terms().collect();
    terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
    let mut out = Vec::new();
    for (m, c) in terms {
        let parts = weyl_factors(m, style);
        for (power, value) in c.iter() {
            let (negative, factors) = coefficient_factors(value, power, style);
            let operator = match parts.len() {
                0 => None,
                1 => Some(parts[0].clone()),
                _ if factors.is_empty() => Some(parts.join(style.circle)),
                _ => Some(format!(
                    "{}{}{}",
                    style.group_open,
                    parts.join(style.circle),
                    style.group_close
                )),
            };
            out.push(assemble(negative, factors, operator));
        }
    }
    out
}

#[derive(Serialize)]
pub struct JsonResult {
    pub basis: &'static str,
    pub terms: Vec<JsonTerm>,
}

#[derive(Serialize)]
pub struct JsonTerm {
    pub word: JsonWord,
    pub coeff: JsonCoeff,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum JsonWord {
    Letters(Vec<&'static str>),
    Weyl {
        n: u32,
        m: u32,
        deriv: Option<&'static str>,
    },
}

#[derive(Serialize)]
pub struct JsonCoeff {
    pub hbar_powers: BTreeMap<i32, JsonComplex>,
}

#[derive(Serialize)]
pub struct JsonComplex {
    pub re: String,
    pub im: String,
}

fn json_coeff(c: &HbarSeries) -> JsonCoeff {
    JsonCoeff {
        hbar_powers: c
            .iter()
            .map(|(k, v)| {
                (
                    k,
                    JsonComplex {
                        re: format_rational(&v.re),
                        im: format_rational(&v.im),
                    },
                )
            })
            .collect(),
    }
}

/// Structured form of the JSON rendering, terms in canonical order.
pub fn to_json(x: &Polynomial) -> JsonResult {
    match x {
        Polynomial::Free(f) => JsonResult {
            basis: "free",
            terms: f
                .terms()
                .map(|(w, c)| JsonTerm {
                    word: JsonWord::Letters(w.letters().iter().map(|l| l.name()).collect()),
                    coeff: json_coeff(c),
                })
                .collect(),
        },
        Polynomial::Weyl(w) => JsonResult {
            basis: "weyl",
            terms: w
                .terms()
                .map(|(m, c)| JsonTerm {
                    word: JsonWord::Weyl {
                        n: m.n,
                        m: m.m,
                        deriv: m.deriv.map(|d| d.letter().name()),
                    },
                    coeff: json_coeff(c),
                })
                .collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{complex, rational};
    use crate::weyl::Derivative;

    fn half_i_hbar() -> HbarSeries {
        HbarSeries::monomial(complex(rational(0, 1), rational(-1, 2)), 1)
    }

    #[test]
    fn text_of_half_anticommutator_normal_form() {
        let x = FreePolynomial::word(Word::q_p(1, 1)) + FreePolynomial::scalar(half_i_hbar());
        assert_eq!(print(&x.into(), Format::Text), "q p - (1/2) i hbar");
    }

    #[test]
    fn latex_of_weyl_monomial() {
        let x = WeylPolynomial::monomial(WeylMonomial::new(2, 1));
        assert_eq!(
            print(&x.into(), Format::Latex),
            "\\hat q^{2} \\circ \\hat p"
        );
    }

    #[test]
    fn zero_in_every_format() {
        assert_eq!(print(&FreePolynomial::zero().into(), Format::Text), "0");
        assert_eq!(print(&WeylPolynomial::zero().into(), Format::Latex), "0");
        assert_eq!(
            print(&FreePolynomial::zero().into(), Format::Json),
            r#"{"basis":"free","terms":[]}"#
        );
    }

    #[test]
    fn json_schema() {
        let x = FreePolynomial::word(Word::q_p(1, 1)) + FreePolynomial::scalar(half_i_hbar());
        assert_eq!(
            print(&x.into(), Format::Json),
            r#"{"basis":"free","terms":[{"word":[],"coeff":{"hbar_powers":{"1":{"re":"0","im":"-1/2"}}}},{"word":["q","p"],"coeff":{"hbar_powers":{"0":{"re":"1","im":"0"}}}}]}"#
        );
        let w = WeylPolynomial::monomial(WeylMonomial::with_derivative(0, 1, Derivative::Q));
        assert_eq!(
            print(&w.into(), Format::Json),
            r#"{"basis":"weyl","terms":[{"word":{"n":0,"m":1,"deriv":"drho_q"},"coeff":{"hbar_powers":{"0":{"re":"1","im":"0"}}}}]}"#
        );
    }

    #[test]
    fn weyl_text_groups_scaled_monomials() {
        let x = WeylPolynomial::term(WeylMonomial::new(2, 2), HbarSeries::from_int(-3))
            + WeylPolynomial::monomial(WeylMonomial::new(1, 0));
        assert_eq!(print(&x.into(), Format::Text), "-3 (q^2 o p^2) + q");
    }

    #[test]
    fn complex_coefficients() {
        let c = complex(rational(1, 2), rational(-3, 1));
        let x = FreePolynomial::term(Word::letter(Letter::Q), HbarSeries::monomial(c, -1));
        assert_eq!(print(&x.into(), Format::Text), "(1/2 - 3 i) hbar^-1 q");
    }
}
