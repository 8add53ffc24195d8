//! Literal term rewriting with the single rule `p q → q p − iħ`.
//!
//! This is the slow reference path: it repeatedly rewrites the leftmost
//! `p q` pair of some non-normal word until none remain. The production
//! [`FreePolynomial::normal_order`] uses a closed-form commutation step
//! instead, and the two are cross-checked in tests.

use crate::free::FreePolynomial;
use crate::scalar::HbarSeries;
use crate::word::{Letter, Word};

/// Normal form by leftmost-innermost rewriting.
pub fn normal_order_by_rewriting(x: &FreePolynomial) -> FreePolynomial {
    let mut current = x.clone();
    loop {
        let Some(word) = current.words().find(|w| !w.is_normal()).cloned() else {
            return current;
        };
        let coeff = current.coefficient(&word);
        current.add_term(word.clone(), &-&coeff);
        for (w, c) in rewrite_once(&word) {
            current.add_term(w, &(&c * &coeff));
        }
    }
}

/// One application of the rule at the leftmost `p q` pair. Returns the word
/// unchanged when it is already normal.
pub fn rewrite_once(word: &Word) -> Vec<(Word, HbarSeries)> {
    let Some(i) = word.first_pq() else {
        return vec![(word.clone(), HbarSeries::one())];
    };
    let letters = word.letters();
    let mut swapped = letters.to_vec();
    swapped[i] = Letter::Q;
    swapped[i + 1] = Letter::P;
    let mut contracted = letters[..i].to_vec();
    contracted.extend_from_slice(&letters[i + 2..]);
    vec![
        (Word::new(swapped), HbarSeries::one()),
        (Word::new(contracted), HbarSeries::minus_i_hbar()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn rewriting_matches_closed_form_on_small_words() {
        for len in 0..=7usize {
            for bits in 0..(1u32 << len) {
                let w: Word = (0..len)
                    .map(|k| if bits >> k & 1 == 1 { P } else { Q })
                    .collect();
                let x = FreePolynomial::word(w);
                assert_eq!(normal_order_by_rewriting(&x), x.normal_order());
            }
        }
    }

    #[test]
    fn rewriting_respects_rho_barrier() {
        let x = FreePolynomial::word(Word::new(vec![P, Q, Rho, P, Q]));
        let nf = normal_order_by_rewriting(&x);
        assert_eq!(nf, x.normal_order());
        assert_eq!(nf.len(), 4);
    }
}
