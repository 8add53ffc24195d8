//! Lie brackets on observables and the checkers for the identities they
//! are expected to satisfy.
//!
//! Every checker returns an [`IdentityReport`] carrying both sides and their
//! difference, so a failing identity always comes with its residue.

use crate::classical::ClassicalPolynomial;
use crate::error::{AlgebraError, Result};
use crate::free::{FreePolynomial, Variable};
use crate::poly::Polynomial;
use crate::scalar::{rational, ComplexRational, HbarSeries, Rational};
use crate::weyl::{Derivative, WeylMonomial, WeylPolynomial};
use crate::word::{Letter, Word};

/// Both sides of an identity and `lhs − rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub difference: Polynomial,
}

impl IdentityReport {
    pub fn free(lhs: FreePolynomial, rhs: FreePolynomial) -> Self {
        let difference = &lhs - &rhs;
        IdentityReport {
            lhs: lhs.into(),
            rhs: rhs.into(),
            difference: difference.into(),
        }
    }

    pub fn weyl(lhs: WeylPolynomial, rhs: WeylPolynomial) -> Self {
        let difference = &lhs - &rhs;
        IdentityReport {
            lhs: lhs.into(),
            rhs: rhs.into(),
            difference: difference.into(),
        }
    }

    pub fn holds(&self) -> bool {
        self.difference.is_zero()
    }
}

/// `{f, g}_S = ∂f/∂q ∘ ∂g/∂p − ∂g/∂q ∘ ∂f/∂p`, computed in the Weyl basis.
pub fn symmetrized_poisson_bracket(
    f: &WeylPolynomial,
    g: &WeylPolynomial,
) -> Result<WeylPolynomial> {
    let a = f
        .derivative(Variable::Q)
        .weyl_product(&g.derivative(Variable::P))?;
    let b = g
        .derivative(Variable::Q)
        .weyl_product(&f.derivative(Variable::P))?;
    Ok(&a - &b)
}

/// `(1/iħ)[f, g]`, normal ordered.
pub fn commutator_bracket(f: &FreePolynomial, g: &FreePolynomial) -> FreePolynomial {
    let commutator = &f.multiply(g) - &g.multiply(f);
    commutator
        .normal_order()
        .scale(&HbarSeries::inverse_i_hbar())
}

/// Replaces `∂ρ/∂p` by `(1/iħ)(qρ − ρq)` and `∂ρ/∂q` by `−(1/iħ)(pρ − ρp)`.
/// Other letters are left in place.
pub fn substitute_drho(x: &FreePolynomial) -> FreePolynomial {
    let rho = FreePolynomial::letter(Letter::Rho);
    let q = FreePolynomial::q();
    let p = FreePolynomial::p();
    let inv = HbarSeries::inverse_i_hbar();
    let drho_p = (&q.multiply(&rho) - &rho.multiply(&q)).scale(&inv);
    let drho_q = (&p.multiply(&rho) - &rho.multiply(&p)).scale(&-&inv);
    x.map_words(|w| {
        w.letters()
            .iter()
            .map(|l| match l {
                Letter::DrhoP => drho_p.clone(),
                Letter::DrhoQ => drho_q.clone(),
                other => FreePolynomial::letter(*other),
            })
            .fold(FreePolynomial::one(), |acc, f| acc.multiply(&f))
    })
}

/// `{f, g ∘ h}_S` against `{f, g}_S ∘ h + g ∘ {f, h}_S`.
pub fn check_leibniz(
    f: &WeylPolynomial,
    g: &WeylPolynomial,
    h: &WeylPolynomial,
) -> Result<IdentityReport> {
    let lhs = symmetrized_poisson_bracket(f, &g.weyl_product(h)?)?;
    let rhs = &symmetrized_poisson_bracket(f, g)?.weyl_product(h)?
        + &g.weyl_product(&symmetrized_poisson_bracket(f, h)?)?;
    Ok(IdentityReport::weyl(lhs, rhs))
}

/// The Leibniz rule with the ordinary product in place of `∘`:
/// `{f, g·h}_S` against `{f, g}_S · h + g · {f, h}_S`.
///
/// The bracket only acts on symmetrized arguments, so `g·h` is symmetrized
/// before entering it. Both sides are compared in the free algebra modulo
/// `[q, p] = iħ`. This identity fails in general.
pub fn check_leibniz_ordinary(
    f: &WeylPolynomial,
    g: &WeylPolynomial,
    h: &WeylPolynomial,
) -> Result<IdentityReport> {
    let gh = crate::weyl::symmetrize(&g.expand().multiply(&h.expand()))?;
    let lhs = symmetrized_poisson_bracket(f, &gh)?.normal_form();
    let fg = symmetrized_poisson_bracket(f, g)?.expand();
    let fh = symmetrized_poisson_bracket(f, h)?.expand();
    let rhs = (&fg.multiply(&h.expand()) + &g.expand().multiply(&fh)).normal_order();
    Ok(IdentityReport::free(lhs, rhs))
}

/// `½(V p + p V)` against `V ∘ p` for `V = Σ c_n q^n`, compared after normal
/// ordering.
pub fn check_anticommutator_identity(coeffs: &[ComplexRational]) -> IdentityReport {
    let v = FreePolynomial::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| (Word::q_p(n, 0), HbarSeries::constant(c.clone()))),
    );
    let p = FreePolynomial::p();
    let lhs = (&v.multiply(&p) + &p.multiply(&v)).scale(&HbarSeries::from_rational(rational(1, 2)));
    let rhs = WeylPolynomial::from_terms(coeffs.iter().enumerate().map(|(n, c)| {
        (
            WeylMonomial::new(n as u32, 1),
            HbarSeries::constant(c.clone()),
        )
    }));
    IdentityReport::free(lhs.normal_order(), rhs.normal_form())
}

fn drho(d: Derivative) -> WeylPolynomial {
    WeylPolynomial::monomial(WeylMonomial::with_derivative(0, 0, d))
}

/// `{F, ρ}_S` with the state derivatives still symbolic:
/// `∂F/∂q ∘ ∂ρ/∂p − ∂ρ/∂q ∘ ∂F/∂p`.
pub fn bracket_with_state(f: &WeylPolynomial) -> Result<WeylPolynomial> {
    if !f.is_pure() {
        return Err(AlgebraError::DerivativeInObservable);
    }
    let a = f
        .derivative(Variable::Q)
        .weyl_product(&drho(Derivative::P))?;
    let b = drho(Derivative::Q).weyl_product(&f.derivative(Variable::P))?;
    Ok(&a - &b)
}

/// `{F, ρ}_S` after substituting the commutator forms of the state
/// derivatives, normal ordered in the free algebra over `q, p, ρ`.
pub fn von_neumann_lhs(f: &WeylPolynomial) -> Result<FreePolynomial> {
    Ok(substitute_drho(&bracket_with_state(f)?.expand()).normal_order())
}

/// `(1/iħ)[F, ρ]`, normal ordered.
pub fn von_neumann_rhs(f: &WeylPolynomial) -> Result<FreePolynomial> {
    if !f.is_pure() {
        return Err(AlgebraError::DerivativeInObservable);
    }
    Ok(commutator_bracket(
        &f.expand(),
        &FreePolynomial::letter(Letter::Rho),
    ))
}

/// `{F, ρ}_S = (1/iħ)[F, ρ]` for a pure observable `F`.
pub fn check_von_neumann_equivalence(f: &WeylPolynomial) -> Result<IdentityReport> {
    Ok(IdentityReport::free(
        von_neumann_lhs(f)?,
        von_neumann_rhs(f)?,
    ))
}

/// Same comparison, but with each product inside the bracket taken as half
/// the anti-commutator of its factors instead of `∘`. This agrees with the
/// commutator only for low degrees.
pub fn check_von_neumann_with_anticommutator(f: &WeylPolynomial) -> Result<IdentityReport> {
    if !f.is_pure() {
        return Err(AlgebraError::DerivativeInObservable);
    }
    let half = HbarSeries::from_rational(rational(1, 2));
    let anti =
        |a: &FreePolynomial, b: &FreePolynomial| (&a.multiply(b) + &b.multiply(a)).scale(&half);
    let dp = FreePolynomial::letter(Letter::DrhoP);
    let dq = FreePolynomial::letter(Letter::DrhoQ);
    let lhs = &anti(&f.derivative(Variable::Q).expand(), &dp)
        - &anti(&dq, &f.derivative(Variable::P).expand());
    let lhs = substitute_drho(&lhs).normal_order();
    Ok(IdentityReport::free(lhs, von_neumann_rhs(f)?))
}

/// Outcome of comparing two classically equal brackets after quantization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    /// Factor applied to the first member of the second pair so that the
    /// classical brackets coincide.
    pub scale: Rational,
    pub classical_bracket: ClassicalPolynomial,
    /// Symmetrized brackets of the two quantized pairs.
    pub symmetrized: IdentityReport,
    /// `(1/iħ)` commutators of the expanded quantized pairs.
    pub commutator: IdentityReport,
}

impl ObstructionReport {
    /// Lowest power of ħ in the commutator discrepancy.
    pub fn commutator_discrepancy_min_hbar_power(&self) -> Option<i32> {
        match &self.commutator.difference {
            Polynomial::Free(x) => x.terms().filter_map(|(_, c)| c.min_power()).min(),
            Polynomial::Weyl(x) => x.terms().filter_map(|(_, c)| c.min_power()).min(),
        }
    }
}

/// Quantizes two classical pairs whose Poisson brackets are proportional,
/// rescales the second pair so they coincide, and compares the quantum
/// brackets under `{·,·}_S` and under `(1/iħ)[·,·]`.
pub fn check_obstruction(
    first: (&ClassicalPolynomial, &ClassicalPolynomial),
    second: (&ClassicalPolynomial, &ClassicalPolynomial),
) -> Result<ObstructionReport> {
    let b1 = first.0.poisson_bracket(first.1);
    let b2 = second.0.poisson_bracket(second.1);
    let scale = b1.rational_ratio(&b2).ok_or_else(|| {
        AlgebraError::BracketMismatch("no rational factor relates the two brackets".into())
    })?;
    let f1 = first.0.quantize();
    let f2 = first.1.quantize();
    let f3 = second.0.scale_rational(&scale).quantize();
    let f4 = second.1.quantize();
    let symmetrized = IdentityReport::weyl(
        symmetrized_poisson_bracket(&f1, &f2)?,
        symmetrized_poisson_bracket(&f3, &f4)?,
    );
    let commutator = IdentityReport::free(
        commutator_bracket(&f1.expand(), &f2.expand()),
        commutator_bracket(&f3.expand(), &f4.expand()),
    );
    Ok(ObstructionReport {
        scale,
        classical_bracket: b1,
        symmetrized,
        commutator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::real;

    fn mono(n: u32, m: u32) -> WeylPolynomial {
        WeylPolynomial::monomial(WeylMonomial::new(n, m))
    }

    fn int(k: i64) -> HbarSeries {
        HbarSeries::from_int(k)
    }

    #[test]
    fn symmetrized_bracket_examples() {
        assert_eq!(
            symmetrized_poisson_bracket(&mono(1, 0), &mono(0, 1)).unwrap(),
            WeylPolynomial::one()
        );
        assert_eq!(
            symmetrized_poisson_bracket(&mono(3, 0), &mono(0, 3)).unwrap(),
            mono(2, 2).scale(&int(9))
        );
        assert_eq!(
            symmetrized_poisson_bracket(&mono(2, 1), &mono(1, 2)).unwrap(),
            mono(2, 2).scale(&int(3))
        );
    }

    #[test]
    fn monomial_bracket_formula() {
        for a1 in 0..4u32 {
            for a2 in 0..4u32 {
                for b1 in 0..4u32 {
                    for b2 in 0..4u32 {
                        let got =
                            symmetrized_poisson_bracket(&mono(a1, a2), &mono(b1, b2)).unwrap();
                        let k = i64::from(a1 * b2) - i64::from(a2 * b1);
                        if k == 0 {
                            assert!(got.is_zero());
                        } else {
                            assert_eq!(got, mono(a1 + b1 - 1, a2 + b2 - 1).scale(&int(k)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let q = FreePolynomial::q();
        let p = FreePolynomial::p();
        assert_eq!(commutator_bracket(&q, &p), FreePolynomial::one());
        assert!(commutator_bracket(&q, &q).is_zero());
        assert_eq!(commutator_bracket(&q.pow(2), &p), q.scale(&int(2)));
    }

    #[test]
    fn substitution_examples() {
        let inv = HbarSeries::inverse_i_hbar();
        let rho = FreePolynomial::letter(Letter::Rho);
        let q = FreePolynomial::q();
        let p = FreePolynomial::p();
        assert_eq!(
            substitute_drho(&FreePolynomial::letter(Letter::DrhoP)),
            (&q.multiply(&rho) - &rho.multiply(&q)).scale(&inv)
        );
        assert_eq!(
            substitute_drho(&FreePolynomial::letter(Letter::DrhoQ)),
            (&p.multiply(&rho) - &rho.multiply(&p)).scale(&-&inv)
        );
        let plain = q.multiply(&p);
        assert_eq!(substitute_drho(&plain), plain);
    }

    #[test]
    fn leibniz_with_weyl_product_holds_on_monomials() {
        let r = check_leibniz(&mono(2, 1), &mono(0, 3), &mono(1, 1)).unwrap();
        assert!(r.holds());
        // both sides: (a1(b2+c2) − a2(b1+c1)) q^{a1+b1+c1−1} ∘ p^{a2+b2+c2−1}
        assert_eq!(r.lhs, Polynomial::Weyl(mono(2, 4).scale(&int(2 * 4 - 1))));
        let r = check_leibniz(&WeylPolynomial::one(), &mono(1, 2), &mono(3, 0)).unwrap();
        assert!(r.holds());
        assert!(r.lhs.is_zero());
    }

    #[test]
    fn leibniz_with_ordinary_product_fails() {
        let r = check_leibniz_ordinary(&mono(1, 0), &mono(1, 1), &mono(0, 1)).unwrap();
        assert!(!r.holds());
        // 2 q∘p normal-orders to 2qp − iħ, while q·p + q∘p gives 2qp − iħ/2.
        let expected = FreePolynomial::scalar(HbarSeries::monomial(
            crate::scalar::complex(rational(0, 1), rational(-1, 2)),
            1,
        ));
        assert_eq!(r.difference, Polynomial::Free(expected));
    }

    #[test]
    fn anticommutator_identity_q_squared() {
        let coeffs = [
            real(rational(0, 1)),
            real(rational(0, 1)),
            real(rational(1, 1)),
        ];
        let r = check_anticommutator_identity(&coeffs);
        assert!(r.holds());
        // q²p − iħ q
        let expected = &FreePolynomial::word(Word::q_p(2, 1))
            + &FreePolynomial::term(Word::q_p(1, 0), HbarSeries::minus_i_hbar());
        assert_eq!(r.lhs, Polynomial::Free(expected));
        assert!(check_anticommutator_identity(&[real(rational(1, 1))]).holds());
    }

    #[test]
    fn von_neumann_small_cases() {
        let r = check_von_neumann_equivalence(&mono(1, 0)).unwrap();
        assert!(r.holds());
        assert!(check_von_neumann_equivalence(&mono(2, 2)).unwrap().holds());
        let d = WeylPolynomial::monomial(WeylMonomial::with_derivative(1, 0, Derivative::Q));
        assert_eq!(
            check_von_neumann_equivalence(&d),
            Err(AlgebraError::DerivativeInObservable)
        );
    }

    #[test]
    fn anticommutator_bracket_breaks_at_cubic_potential() {
        assert!(check_von_neumann_with_anticommutator(&mono(2, 0))
            .unwrap()
            .holds());
        assert!(!check_von_neumann_with_anticommutator(&mono(3, 0))
            .unwrap()
            .holds());
        assert!(check_von_neumann_equivalence(&mono(3, 0)).unwrap().holds());
    }

    #[test]
    fn groenewold_pair() {
        let c = ClassicalPolynomial::monomial;
        let report = check_obstruction((&c(3, 0), &c(0, 3)), (&c(2, 1), &c(1, 2))).unwrap();
        assert_eq!(report.scale, rational(3, 1));
        assert!(report.symmetrized.holds());
        assert_eq!(
            report.symmetrized.lhs,
            Polynomial::Weyl(mono(2, 2).scale(&int(9)))
        );
        assert!(!report.commutator.holds());
        assert!(report.commutator_discrepancy_min_hbar_power().unwrap() >= 2);
    }

    #[test]
    fn obstruction_rejects_unrelated_brackets() {
        let c = ClassicalPolynomial::monomial;
        assert!(matches!(
            check_obstruction((&c(1, 0), &c(0, 1)), (&c(2, 0), &c(0, 1))),
            Err(AlgebraError::BracketMismatch(_))
        ));
    }
}
