//! The symmetrizer, the Weyl basis and the symmetrized product `∘`.
//!
//! A [`WeylMonomial`] `(n, m, d)` stands for the average over all distinct
//! arrangements of `n` copies of `q`, `m` copies of `p` and at most one
//! derivative-of-state letter `d`. Because that average depends only on the
//! letter counts, the symmetrized product reduces to adding exponents.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{AlgebraError, Result};
use crate::free::{FreePolynomial, Variable};
use crate::multiset::MultisetPermutations;
use crate::scalar::{real, ComplexRational, HbarSeries, Rational};
use crate::word::{Letter, Word};

/// Which partial derivative of the state a monomial carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Derivative {
    /// `∂ρ/∂q`
    Q,
    /// `∂ρ/∂p`
    P,
}

impl Derivative {
    pub fn letter(self) -> Letter {
        match self {
            Derivative::Q => Letter::DrhoQ,
            Derivative::P => Letter::DrhoP,
        }
    }

    pub fn from_letter(l: Letter) -> Option<Derivative> {
        match l {
            Letter::DrhoQ => Some(Derivative::Q),
            Letter::DrhoP => Some(Derivative::P),
            _ => None,
        }
    }
}

/// `q^n ∘ p^m`, optionally `∘` one derivative-of-state letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylMonomial {
    pub n: u32,
    pub m: u32,
    pub deriv: Option<Derivative>,
}

impl WeylMonomial {
    pub const IDENTITY: WeylMonomial = WeylMonomial {
        n: 0,
        m: 0,
        deriv: None,
    };

    pub fn new(n: u32, m: u32) -> Self {
        WeylMonomial { n, m, deriv: None }
    }

    pub fn with_derivative(n: u32, m: u32, d: Derivative) -> Self {
        WeylMonomial {
            n,
            m,
            deriv: Some(d),
        }
    }

    pub fn degree(&self) -> u32 {
        self.n + self.m
    }

    /// Exponent-additive product. `None` when both factors carry a
    /// derivative letter.
    pub fn product(&self, other: &WeylMonomial) -> Option<WeylMonomial> {
        let deriv = match (self.deriv, other.deriv) {
            (Some(_), Some(_)) => return None,
            (a, b) => a.or(b),
        };
        Some(WeylMonomial {
            n: self.n + other.n,
            m: self.m + other.m,
            deriv,
        })
    }

    /// Letters with multiplicity, sorted.
    fn letters(&self) -> Vec<Letter> {
        let mut v = vec![Letter::Q; self.n as usize];
        v.extend(std::iter::repeat_n(Letter::P, self.m as usize));
        if let Some(d) = self.deriv {
            v.push(d.letter());
        }
        v
    }

    /// Number of distinct arrangements, `(n+m+e)!/(n! m!)`.
    pub fn arrangement_count(&self) -> BigInt {
        let e = u32::from(self.deriv.is_some());
        factorial(self.n + self.m + e) / (factorial(self.n) * factorial(self.m))
    }

    /// Weight of each arrangement: `n! m! / (n+m+e)!`.
    pub fn arrangement_weight(&self) -> Rational {
        Rational::new(BigInt::one(), self.arrangement_count())
    }

    /// Sum of all distinct arrangements, each weighted by
    /// [`arrangement_weight`](Self::arrangement_weight). Words come out in
    /// lexicographic letter order.
    pub fn expand(&self) -> FreePolynomial {
        let weight = HbarSeries::from_rational(self.arrangement_weight());
        FreePolynomial::from_terms(
            MultisetPermutations::new(self.letters()).map(|v| (Word::new(v), weight.clone())),
        )
    }

    /// `normal_order(expand(w))`.
    pub fn normal_form(&self) -> FreePolynomial {
        self.expand().normal_order()
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Finite sum of Weyl monomials with [`HbarSeries`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylPolynomial {
    terms: BTreeMap<WeylMonomial, HbarSeries>,
}

impl WeylPolynomial {
    pub fn zero() -> Self {
        WeylPolynomial::default()
    }

    pub fn one() -> Self {
        WeylPolynomial::monomial(WeylMonomial::IDENTITY)
    }

    pub fn monomial(w: WeylMonomial) -> Self {
        WeylPolynomial::term(w, HbarSeries::one())
    }

    pub fn term(w: WeylMonomial, c: HbarSeries) -> Self {
        let mut out = WeylPolynomial::zero();
        out.add_term(w, &c);
        out
    }

    pub fn scalar(c: HbarSeries) -> Self {
        WeylPolynomial::term(WeylMonomial::IDENTITY, c)
    }

    pub fn from_terms<I: IntoIterator<Item = (WeylMonomial, HbarSeries)>>(iter: I) -> Self {
        let mut out = WeylPolynomial::zero();
        for (w, c) in iter {
            out.add_term(w, &c);
        }
        out
    }

    pub fn add_term(&mut self, w: WeylMonomial, c: &HbarSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&WeylMonomial, &HbarSeries)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &WeylMonomial) -> HbarSeries {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// No derivative letters anywhere.
    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(|w| w.deriv.is_none())
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(WeylMonomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &HbarSeries) -> WeylPolynomial {
        WeylPolynomial::from_terms(self.terms.iter().map(|(w, v)| (*w, v * c)))
    }

    pub fn scale_complex(&self, c: &ComplexRational) -> WeylPolynomial {
        WeylPolynomial::from_terms(self.terms.iter().map(|(w, v)| (*w, v.scale(c))))
    }

    /// Symmetrized product via exponent addition, bilinear in the
    /// coefficients.
    pub fn weyl_product(&self, other: &WeylPolynomial) -> Result<WeylPolynomial> {
        let mut out = WeylPolynomial::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let w = wa.product(wb).ok_or(AlgebraError::UnsupportedFragment)?;
                out.add_term(w, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Repeated symmetrized product; `x^0` is the identity.
    pub fn weyl_pow(&self, exp: u32) -> Result<WeylPolynomial> {
        (0..exp).try_fold(WeylPolynomial::one(), |acc, _| acc.weyl_product(self))
    }

    /// Derivative in the Weyl basis: `∂/∂q (q^n ∘ p^m) = n q^{n−1} ∘ p^m`,
    /// and likewise for `p`. Derivative-of-state letters are constants.
    pub fn derivative(&self, wrt: Variable) -> WeylPolynomial {
        let mut out = WeylPolynomial::zero();
        for (w, c) in &self.terms {
            let (k, lowered) = match wrt {
                Variable::Q if w.n > 0 => (w.n, WeylMonomial { n: w.n - 1, ..*w }),
                Variable::P if w.m > 0 => (w.m, WeylMonomial { m: w.m - 1, ..*w }),
                _ => continue,
            };
            out.add_term(lowered, &c.scale(&real(Rational::from_integer(k.into()))));
        }
        out
    }

    /// Sum of the expansions of every term.
    pub fn expand(&self) -> FreePolynomial {
        let mut out = FreePolynomial::zero();
        for (w, c) in &self.terms {
            for (word, wc) in w.expand().terms() {
                out.add_term(word.clone(), &(wc * c));
            }
        }
        out
    }

    /// `normal_order(expand(x))`.
    pub fn normal_form(&self) -> FreePolynomial {
        self.expand().normal_order()
    }
}

/// Applies the symmetrizer term by term to an expression taken as written.
///
/// Terms carrying `ħ^k` with `k ≥ 1` are annihilated; `ħ^0` terms map to the
/// Weyl monomial with the same letter counts. Negative powers of ħ, the bare
/// state letter `rho`, and words with two or more derivative letters are
/// rejected.
pub fn symmetrize(x: &FreePolynomial) -> Result<WeylPolynomial> {
    let mut out = WeylPolynomial::zero();
    for (word, coeff) in x.terms() {
        let counts = word.counts();
        if counts.rho > 0 {
            return Err(AlgebraError::SymmetrizeRho(word.clone()));
        }
        if counts.derivatives() > 1 {
            return Err(AlgebraError::MultipleDerivatives(word.clone()));
        }
        if let Some(power) = coeff.min_power().filter(|k| *k < 0) {
            return Err(AlgebraError::NegativeHbarPower {
                word: word.clone(),
                power,
            });
        }
        let deriv = word
            .letters()
            .iter()
            .find_map(|l| Derivative::from_letter(*l));
        let monomial = WeylMonomial {
            n: counts.q as u32,
            m: counts.p as u32,
            deriv,
        };
        out.add_term(monomial, &HbarSeries::constant(coeff.coefficient(0)));
    }
    Ok(out)
}

impl Add for &WeylPolynomial {
    type Output = WeylPolynomial;

    fn add(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, c);
        }
        out
    }
}

impl Sub for &WeylPolynomial {
    type Output = WeylPolynomial;

    fn sub(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, &-c);
        }
        out
    }
}

impl Neg for &WeylPolynomial {
    type Output = WeylPolynomial;

    fn neg(self) -> WeylPolynomial {
        WeylPolynomial::from_terms(self.terms.iter().map(|(w, c)| (*w, -c)))
    }
}

impl Add for WeylPolynomial {
    type Output = WeylPolynomial;

    fn add(self, rhs: WeylPolynomial) -> WeylPolynomial {
        &self + &rhs
    }
}

impl Sub for WeylPolynomial {
    type Output = WeylPolynomial;

    fn sub(self, rhs: WeylPolynomial) -> WeylPolynomial {
        &self - &rhs
    }
}

impl Neg for WeylPolynomial {
    type Output = WeylPolynomial;

    fn neg(self) -> WeylPolynomial {
        -&self
    }
}
