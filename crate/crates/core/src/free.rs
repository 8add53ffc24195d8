//! Polynomials in the free algebra over the generator letters, and the
//! normal-ordering map modulo `[q, p] = iħ`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::scalar::{rational, ComplexRational, HbarSeries};
use crate::word::{Letter, Word};

/// Differentiation variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    Q,
    P,
}

impl Variable {
    pub fn letter(self) -> Letter {
        match self {
            Variable::Q => Letter::Q,
            Variable::P => Letter::P,
        }
    }
}

/// Finite sum of words with [`HbarSeries`] coefficients.
///
/// Terms are kept in canonical word order with zero coefficients pruned, so
/// `==` is equality in the free algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreePolynomial {
    terms: BTreeMap<Word, HbarSeries>,
}

impl FreePolynomial {
    pub fn zero() -> Self {
        FreePolynomial::default()
    }

    pub fn one() -> Self {
        FreePolynomial::scalar(HbarSeries::one())
    }

    pub fn scalar(c: HbarSeries) -> Self {
        FreePolynomial::term(Word::identity(), c)
    }

    pub fn word(w: Word) -> Self {
        FreePolynomial::term(w, HbarSeries::one())
    }

    pub fn letter(l: Letter) -> Self {
        FreePolynomial::word(Word::letter(l))
    }

    pub fn q() -> Self {
        FreePolynomial::letter(Letter::Q)
    }

    pub fn p() -> Self {
        FreePolynomial::letter(Letter::P)
    }

    pub fn term(w: Word, c: HbarSeries) -> Self {
        let mut out = FreePolynomial::zero();
        out.add_term(w, &c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, HbarSeries)>>(iter: I) -> Self {
        let mut out = FreePolynomial::zero();
        for (w, c) in iter {
            out.add_term(w, &c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: &HbarSeries) {
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &HbarSeries)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> HbarSeries {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// Longest word length; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// True when every word consists of `q` and `p` only.
    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(Word::is_pure)
    }

    /// True when the only word is the identity.
    pub fn as_scalar(&self) -> Option<HbarSeries> {
        match self.terms.len() {
            0 => Some(HbarSeries::zero()),
            1 => self.terms.get(&Word::identity()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &HbarSeries) -> FreePolynomial {
        FreePolynomial::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), v * c)))
    }

    pub fn scale_complex(&self, c: &ComplexRational) -> FreePolynomial {
        FreePolynomial::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), v.scale(c))))
    }

    /// Ordinary (concatenation) product. No rewriting is applied.
    pub fn multiply(&self, other: &FreePolynomial) -> FreePolynomial {
        let mut out = FreePolynomial::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> FreePolynomial {
        (0..exp).fold(FreePolynomial::one(), |acc, _| acc.multiply(self))
    }

    /// Unique representative modulo `pq = qp − iħ` with every `q` left of
    /// every `p` inside each run of canonical letters. Opaque letters
    /// (`rho`, `drho_q`, `drho_p`) split words into independent segments.
    pub fn normal_order(&self) -> FreePolynomial {
        let mut cache: HashMap<Vec<Letter>, Vec<(Word, HbarSeries)>> = HashMap::new();
        let mut out = FreePolynomial::zero();
        for (w, c) in &self.terms {
            if w.is_normal() {
                out.add_term(w.clone(), c);
                continue;
            }
            for (nw, nc) in normal_order_word(w, &mut cache) {
                out.add_term(nw, &(&nc * c));
            }
        }
        out
    }

    /// Positional Leibniz derivative: every occurrence of the variable is
    /// deleted in turn. Opaque letters behave as constants.
    pub fn partial_derivative(&self, wrt: Variable) -> FreePolynomial {
        let target = wrt.letter();
        let mut out = FreePolynomial::zero();
        for (w, c) in &self.terms {
            for (i, l) in w.letters().iter().enumerate() {
                if *l == target {
                    out.add_term(w.without(i), c);
                }
            }
        }
        out
    }

    /// Hermitian adjoint: reversed words, conjugated coefficients, ħ real.
    pub fn adjoint(&self) -> Result<FreePolynomial> {
        let mut out = FreePolynomial::zero();
        for (w, c) in &self.terms {
            if !w.is_pure() {
                return Err(AlgebraError::AdjointOfStateWord(w.clone()));
            }
            out.add_term(w.reversed(), &c.conj());
        }
        Ok(out)
    }

    /// Applies `f` to every word and sums the results with coefficients.
    pub fn map_words<F>(&self, mut f: F) -> FreePolynomial
    where
        F: FnMut(&Word) -> FreePolynomial,
    {
        let mut out = FreePolynomial::zero();
        for (w, c) in &self.terms {
            for (nw, nc) in f(w).terms {
                out.add_term(nw, &(&nc * c));
            }
        }
        out
    }
}

/// Normal form of `q^a p^b · x` for canonical letter runs, accumulated one
/// letter at a time from the left. Appending `q` uses
/// `p^b q = q p^b − iħ b p^{b−1}`.
fn normal_order_segment(letters: &[Letter]) -> Vec<(Word, HbarSeries)> {
    let mut state: BTreeMap<(usize, usize), HbarSeries> = BTreeMap::new();
    state.insert((0, 0), HbarSeries::one());
    for &l in letters {
        let mut next: BTreeMap<(usize, usize), HbarSeries> = BTreeMap::new();
        for ((a, b), c) in state {
            match l {
                Letter::P => accumulate(&mut next, (a, b + 1), &c),
                Letter::Q => {
                    accumulate(&mut next, (a + 1, b), &c);
                    if b > 0 {
                        let factor = HbarSeries::minus_i_hbar()
                            .scale(&crate::scalar::real(rational(b as i64, 1)));
                        accumulate(&mut next, (a, b - 1), &(&c * &factor));
                    }
                }
                _ => unreachable!("segments only hold q and p"),
            }
        }
        state = next;
    }
    state
        .into_iter()
        .map(|((a, b), c)| (Word::q_p(a, b), c))
        .collect()
}

fn accumulate(map: &mut BTreeMap<(usize, usize), HbarSeries>, key: (usize, usize), c: &HbarSeries) {
    let entry = map.entry(key).or_default();
    *entry += c;
    if entry.is_zero() {
        map.remove(&key);
    }
}

fn normal_order_word(
    w: &Word,
    cache: &mut HashMap<Vec<Letter>, Vec<(Word, HbarSeries)>>,
) -> Vec<(Word, HbarSeries)> {
    let mut partial: Vec<(Vec<Letter>, HbarSeries)> = vec![(Vec::new(), HbarSeries::one())];
    let letters = w.letters();
    let mut start = 0;
    let mut push_segment = |seg: &[Letter], partial: &mut Vec<(Vec<Letter>, HbarSeries)>| {
        if seg.is_empty() {
            return;
        }
        let nf = cache
            .entry(seg.to_vec())
            .or_insert_with(|| normal_order_segment(seg))
            .clone();
        let mut next = Vec::with_capacity(partial.len() * nf.len());
        for (prefix, pc) in partial.iter() {
            for (sw, sc) in &nf {
                let mut v = prefix.clone();
                v.extend_from_slice(sw.letters());
                next.push((v, pc * sc));
            }
        }
        *partial = next;
    };
    for (i, l) in letters.iter().enumerate() {
        if !l.is_canonical() {
            push_segment(&letters[start..i], &mut partial);
            for (prefix, _) in partial.iter_mut() {
                prefix.push(*l);
            }
            start = i + 1;
        }
    }
    push_segment(&letters[start..], &mut partial);
    partial
        .into_iter()
        .map(|(v, c)| (Word::new(v), c))
        .collect()
}

impl Add for &FreePolynomial {
    type Output = FreePolynomial;

    fn add(self, rhs: &FreePolynomial) -> FreePolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &FreePolynomial {
    type Output = FreePolynomial;

    fn sub(self, rhs: &FreePolynomial) -> FreePolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl Neg for &FreePolynomial {
    type Output = FreePolynomial;

    fn neg(self) -> FreePolynomial {
        FreePolynomial::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), -c)))
    }
}

impl Mul for &FreePolynomial {
    type Output = FreePolynomial;

    fn mul(self, rhs: &FreePolynomial) -> FreePolynomial {
        self.multiply(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FreePolynomial {
            type Output = FreePolynomial;
            fn $m(self, rhs: FreePolynomial) -> FreePolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FreePolynomial {
    type Output = FreePolynomial;

    fn neg(self) -> FreePolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, real};
    use Letter::*;

    fn w(letters: &[Letter]) -> FreePolynomial {
        FreePolynomial::word(Word::new(letters.to_vec()))
    }

    fn i_hbar_pow(re: i64, im: i64, power: i32) -> HbarSeries {
        HbarSeries::monomial(
            crate::scalar::complex(rational(re, 1), rational(im, 1)),
            power,
        )
    }

    #[test]
    fn multiply_concatenates() {
        assert_eq!(FreePolynomial::q() * FreePolynomial::p(), w(&[Q, P]));
        let sum = FreePolynomial::q() + FreePolynomial::p();
        assert_eq!(&sum * &FreePolynomial::q(), w(&[Q, Q]) + w(&[P, Q]));
        let ih = FreePolynomial::scalar(&HbarSeries::i() * &HbarSeries::hbar());
        assert_eq!(
            &ih * &FreePolynomial::q(),
            FreePolynomial::term(Word::letter(Q), i_hbar_pow(0, 1, 1))
        );
    }

    #[test]
    fn normal_order_pq() {
        let expected = w(&[Q, P]) + FreePolynomial::scalar(i_hbar_pow(0, -1, 1));
        assert_eq!(w(&[P, Q]).normal_order(), expected);
        assert_eq!(w(&[Q, P]).normal_order(), w(&[Q, P]));
    }

    #[test]
    fn normal_order_p2q2() {
        // q²p² − 4iħ qp − 2ħ²
        let expected = w(&[Q, Q, P, P])
            + FreePolynomial::term(Word::q_p(1, 1), i_hbar_pow(0, -4, 1))
            + FreePolynomial::scalar(i_hbar_pow(-2, 0, 2));
        assert_eq!(w(&[P, P, Q, Q]).normal_order(), expected);
    }

    #[test]
    fn rho_blocks_rewriting() {
        let x = w(&[P, Rho, Q]);
        assert_eq!(x.normal_order(), x);
        let y = w(&[P, Q, DrhoP, P, Q]).normal_order();
        assert!(y.words().all(|w| w.is_normal()));
        assert_eq!(y.len(), 4);
    }

    #[test]
    fn partial_derivative_examples() {
        assert_eq!(
            w(&[Q, Q]).partial_derivative(Variable::Q),
            FreePolynomial::q().scale(&HbarSeries::from_int(2))
        );
        assert_eq!(
            w(&[Q, P, Q]).partial_derivative(Variable::Q),
            w(&[P, Q]) + w(&[Q, P])
        );
        assert!(w(&[Q, Q, Q]).partial_derivative(Variable::P).is_zero());
        assert!(w(&[DrhoP, Rho]).partial_derivative(Variable::P).is_zero());
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(w(&[Q, P]).adjoint().unwrap(), w(&[P, Q]));
        let x = FreePolynomial::term(Word::q_p(1, 1), i_hbar_pow(0, 1, 1));
        assert_eq!(
            x.adjoint().unwrap(),
            FreePolynomial::term(Word::new(vec![P, Q]), i_hbar_pow(0, -1, 1))
        );
        let half = HbarSeries::from_rational(rational(1, 2));
        let sym = (w(&[Q, P]) + w(&[P, Q])).scale(&half);
        assert_eq!(sym.adjoint().unwrap(), sym);
        assert!(matches!(
            w(&[Q, Rho]).adjoint(),
            Err(AlgebraError::AdjointOfStateWord(_))
        ));
    }

    #[test]
    fn zero_terms_are_pruned() {
        let x = w(&[Q, P]) - w(&[Q, P]);
        assert!(x.is_zero());
        assert!(w(&[Q]).scale_complex(&real(rational(0, 1))).is_zero());
    }
}
