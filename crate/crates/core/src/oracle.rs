//! Independent check of operator identities through the Schrödinger
//! representation on polynomials: `q` multiplies by `x`, `p` acts as
//! `−iħ d/dx`. ħ stays formal, so every computation is exact.
//!
//! The representation is faithful on polynomial operators. A nonzero
//! normal-ordered operator `Σ c_{ab} q^a p^b` has some smallest `b₀` with a
//! nonzero coefficient; applied to `x^{b₀}` every term with `b > b₀`
//! vanishes and the `b = b₀` terms give `Σ_a c_{a b₀} (−iħ)^{b₀} b₀! x^a`,
//! which is nonzero. So two operators whose `p`-degree is at most `d` are
//! equal exactly when they agree on `1, x, …, x^d`. The default bound used
//! by [`oracle_equal_default`] is the total degree plus one, which always
//! covers the `p`-degree.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::free::FreePolynomial;
use crate::scalar::{rational, real, HbarSeries};
use crate::word::Letter;

/// Polynomial `Σ_k f_k x^k` with [`HbarSeries`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TestFunction {
    coefficients: BTreeMap<u32, HbarSeries>,
}

impl TestFunction {
    pub fn zero() -> Self {
        TestFunction::default()
    }

    /// `x^k`.
    pub fn power(k: u32) -> Self {
        let mut f = TestFunction::zero();
        f.add(k, &HbarSeries::one());
        f
    }

    pub fn from_coefficients<I: IntoIterator<Item = (u32, HbarSeries)>>(iter: I) -> Self {
        let mut f = TestFunction::zero();
        for (k, c) in iter {
            f.add(k, &c);
        }
        f
    }

    pub fn coefficient(&self, k: u32) -> HbarSeries {
        self.coefficients.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    fn add(&mut self, k: u32, c: &HbarSeries) {
        if c.is_zero() {
            return;
        }
        match self.coefficients.entry(k) {
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

    fn multiply_by_x(&self) -> TestFunction {
        TestFunction {
            coefficients: self
                .coefficients
                .iter()
                .map(|(k, c)| (k + 1, c.clone()))
                .collect(),
        }
    }

    fn apply_momentum(&self) -> TestFunction {
        let mut out = TestFunction::zero();
        let minus_i_hbar = HbarSeries::minus_i_hbar();
        for (&k, c) in &self.coefficients {
            if k > 0 {
                let factor = minus_i_hbar.scale(&real(rational(i64::from(k), 1)));
                out.add(k - 1, &(c * &factor));
            }
        }
        out
    }

    fn scaled(&self, c: &HbarSeries) -> TestFunction {
        TestFunction::from_coefficients(self.coefficients.iter().map(|(k, v)| (*k, v * c)))
    }

    fn plus(&mut self, other: &TestFunction) {
        for (k, c) in &other.coefficients {
            self.add(*k, c);
        }
    }
}

/// Acts with `op` on `f`, each word applied right to left.
pub fn apply(op: &FreePolynomial, f: &TestFunction) -> Result<TestFunction> {
    let mut out = TestFunction::zero();
    for (word, coeff) in op.terms() {
        let mut g = f.clone();
        for letter in word.letters().iter().rev() {
            g = match letter {
                Letter::Q => g.multiply_by_x(),
                Letter::P => g.apply_momentum(),
                _ => return Err(AlgebraError::NonCanonicalLetter(word.clone())),
            };
        }
        out.plus(&g.scaled(coeff));
    }
    Ok(out)
}

/// True iff `a` and `b` act identically on `x^0, …, x^max_test_degree`.
pub fn oracle_equal(a: &FreePolynomial, b: &FreePolynomial, max_test_degree: u32) -> Result<bool> {
    for k in 0..=max_test_degree {
        let f = TestFunction::power(k);
        if apply(a, &f)? != apply(b, &f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`oracle_equal`] with the bound set to the larger total degree plus one.
pub fn oracle_equal_default(a: &FreePolynomial, b: &FreePolynomial) -> Result<bool> {
    let bound = a.degree().max(b.degree()) as u32 + 1;
    oracle_equal(a, b, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::WeylMonomial;
    use crate::word::Word;
    use Letter::*;

    fn w(letters: &[Letter]) -> FreePolynomial {
        FreePolynomial::word(Word::new(letters.to_vec()))
    }

    #[test]
    fn pq_on_constant() {
        let got = apply(&w(&[P, Q]), &TestFunction::power(0)).unwrap();
        assert_eq!(
            got,
            TestFunction::from_coefficients([(0, HbarSeries::minus_i_hbar())])
        );
    }

    #[test]
    fn canonical_commutator_acts_as_i_hbar() {
        let comm = &w(&[Q, P]) - &w(&[P, Q]);
        let i_hbar = &HbarSeries::i() * &HbarSeries::hbar();
        let f = TestFunction::from_coefficients([
            (0, HbarSeries::from_int(3)),
            (2, HbarSeries::from_int(-1)),
            (5, HbarSeries::hbar()),
        ]);
        let expected = f.scaled(&i_hbar);
        assert_eq!(apply(&comm, &f).unwrap(), expected);
    }

    #[test]
    fn symmetrized_pair_witness_equal() {
        let half = HbarSeries::from_rational(rational(1, 2));
        let a = (&w(&[Q, P]) + &w(&[P, Q])).scale(&half);
        let b = &w(&[Q, P])
            - &FreePolynomial::scalar(
                (&HbarSeries::i() * &HbarSeries::hbar()).scale(&real(rational(1, 2))),
            );
        assert!(oracle_equal_default(&a, &b).unwrap());
        assert!(!oracle_equal_default(&w(&[Q, P]), &w(&[P, Q])).unwrap());
        let e = WeylMonomial::new(2, 2).expand();
        assert!(oracle_equal_default(&e, &e.normal_order()).unwrap());
    }

    #[test]
    fn rejects_state_letters() {
        assert!(apply(&w(&[Rho]), &TestFunction::power(1)).is_err());
    }
}
