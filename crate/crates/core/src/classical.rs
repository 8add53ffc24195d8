//! Commutative polynomials in `(q, p)` and the classical Poisson bracket.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::free::Variable;
use crate::scalar::{real, ComplexRational, HbarSeries, Rational};
use crate::weyl::{WeylMonomial, WeylPolynomial};

/// `Σ c_{nm} q^n p^m` with complex rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassicalPolynomial {
    terms: BTreeMap<(u32, u32), ComplexRational>,
}

impl ClassicalPolynomial {
    pub fn zero() -> Self {
        ClassicalPolynomial::default()
    }

    pub fn monomial(n: u32, m: u32) -> Self {
        ClassicalPolynomial::term(n, m, real(Rational::one()))
    }

    pub fn term(n: u32, m: u32, c: ComplexRational) -> Self {
        let mut out = ClassicalPolynomial::zero();
        out.add_term((n, m), &c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), ComplexRational)>>(iter: I) -> Self {
        let mut out = ClassicalPolynomial::zero();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }

    pub fn add_term(&mut self, key: (u32, u32), c: &ComplexRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ComplexRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &ComplexRational) -> ClassicalPolynomial {
        ClassicalPolynomial::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn scale_rational(&self, r: &Rational) -> ClassicalPolynomial {
        self.scale(&real(r.clone()))
    }

    pub fn derivative(&self, wrt: Variable) -> ClassicalPolynomial {
        let mut out = ClassicalPolynomial::zero();
        for (&(n, m), c) in &self.terms {
            let (k, key) = match wrt {
                Variable::Q if n > 0 => (n, (n - 1, m)),
                Variable::P if m > 0 => (m, (n, m - 1)),
                _ => continue,
            };
            out.add_term(key, &(c * real(Rational::from_integer(k.into()))));
        }
        out
    }

    /// `∂f/∂q ∂g/∂p − ∂g/∂q ∂f/∂p`.
    pub fn poisson_bracket(&self, g: &ClassicalPolynomial) -> ClassicalPolynomial {
        let a = &self.derivative(Variable::Q) * &g.derivative(Variable::P);
        let b = &g.derivative(Variable::Q) * &self.derivative(Variable::P);
        &a - &b
    }

    /// Weyl quantization: `q^n p^m ↦ q^n ∘ p^m`.
    pub fn quantize(&self) -> WeylPolynomial {
        WeylPolynomial::from_terms(
            self.terms
                .iter()
                .map(|(&(n, m), c)| (WeylMonomial::new(n, m), HbarSeries::constant(c.clone()))),
        )
    }

    /// Inverse of [`quantize`](Self::quantize). Fails on derivative letters
    /// and on any power of ħ other than zero.
    pub fn dequantize(x: &WeylPolynomial) -> Result<ClassicalPolynomial> {
        let mut out = ClassicalPolynomial::zero();
        for (w, c) in x.terms() {
            if w.deriv.is_some() {
                return Err(AlgebraError::NotClassical(format!(
                    "term ({}, {}) carries a derivative letter",
                    w.n, w.m
                )));
            }
            if c.iter().any(|(k, _)| k != 0) {
                return Err(AlgebraError::NotClassical(format!(
                    "term ({}, {}) carries a power of hbar",
                    w.n, w.m
                )));
            }
            out.add_term((w.n, w.m), &c.coefficient(0));
        }
        Ok(out)
    }

    /// If `self = s · other` for a rational `s`, returns `s`.
    pub fn rational_ratio(&self, other: &ClassicalPolynomial) -> Option<Rational> {
        if self.is_zero() && other.is_zero() {
            return Some(Rational::from_integer(1.into()));
        }
        let (key, c_other) = other.terms.iter().next()?;
        let c_self = self.terms.get(key)?;
        let ratio = c_self / c_other;
        if !ratio.im.is_zero() {
            return None;
        }
        (other.scale(&ratio) == *self).then_some(ratio.re)
    }
}

impl Add for &ClassicalPolynomial {
    type Output = ClassicalPolynomial;

    fn add(self, rhs: &ClassicalPolynomial) -> ClassicalPolynomial {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub for &ClassicalPolynomial {
    type Output = ClassicalPolynomial;

    fn sub(self, rhs: &ClassicalPolynomial) -> ClassicalPolynomial {
        self + &-rhs
    }
}

impl Neg for &ClassicalPolynomial {
    type Output = ClassicalPolynomial;

    fn neg(self) -> ClassicalPolynomial {
        ClassicalPolynomial::from_terms(self.terms.iter().map(|(k, c)| (*k, -c.clone())))
    }
}

impl Mul for &ClassicalPolynomial {
    type Output = ClassicalPolynomial;

    fn mul(self, rhs: &ClassicalPolynomial) -> ClassicalPolynomial {
        let mut out = ClassicalPolynomial::zero();
        for (&(n1, m1), a) in &self.terms {
            for (&(n2, m2), b) in &rhs.terms {
                out.add_term((n1 + n2, m1 + m2), &(a * b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn mono(n: u32, m: u32) -> ClassicalPolynomial {
        ClassicalPolynomial::monomial(n, m)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(mono(1, 0).poisson_bracket(&mono(0, 1)), mono(0, 0));
        assert_eq!(
            mono(3, 0).poisson_bracket(&mono(0, 3)),
            mono(2, 2).scale_rational(&rational(9, 1))
        );
        assert_eq!(
            mono(1, 1).poisson_bracket(&mono(2, 0)),
            mono(2, 0).scale_rational(&rational(-2, 1))
        );
    }

    #[test]
    fn quantize_roundtrip() {
        let f = &mono(2, 1) + &mono(0, 3).scale_rational(&rational(-1, 2));
        assert_eq!(
            f.quantize().coefficient(&WeylMonomial::new(2, 1)),
            HbarSeries::one()
        );
        assert_eq!(ClassicalPolynomial::dequantize(&f.quantize()).unwrap(), f);
        let h = WeylPolynomial::scalar(HbarSeries::hbar());
        assert!(ClassicalPolynomial::dequantize(&h).is_err());
    }

    #[test]
    fn ratio_detection() {
        let a = mono(2, 2).scale_rational(&rational(9, 1));
        let b = mono(2, 2).scale_rational(&rational(3, 1));
        assert_eq!(a.rational_ratio(&b), Some(rational(3, 1)));
        assert_eq!(a.rational_ratio(&mono(1, 1)), None);
    }
}
