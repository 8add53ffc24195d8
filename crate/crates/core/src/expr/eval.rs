use num_traits::One;
use thiserror::Error;

use super::ast::{Expr, ExprKind, Func, Symbol};
use super::{parse, ExprError, Span};
use crate::bracket::{commutator_bracket, symmetrized_poisson_bracket};
use crate::error::AlgebraError;
use crate::free::{FreePolynomial, Variable};
use crate::poly::Polynomial;
use crate::scalar::{real, HbarSeries, Rational};
use crate::weyl::{symmetrize, WeylMonomial, WeylPolynomial};
use crate::word::Letter;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("evaluation error at {span}: {source}")]
pub struct EvalError {
    pub span: Span,
    pub source: AlgebraError,
}

pub fn evaluate_str(input: &str) -> Result<Polynomial, ExprError> {
    Ok(evaluate(&parse(input)?)?)
}

/// Evaluates an expression tree.
///
/// Free and Weyl values mix as follows:
///
/// * `o`, `pb` and `S` symmetrize free operands; `*`, `comm` and `normal`
///   expand Weyl operands into the free algebra.
/// * `*` by a scalar keeps the other operand's basis.
/// * `+`/`-` of a Weyl value and a free scalar stays in the Weyl basis;
///   any other mixed sum is carried out in the free algebra.
/// * `x^k` repeats `∘` for Weyl bases and `*` otherwise.
pub fn evaluate(expr: &Expr) -> Result<Polynomial, EvalError> {
    let at = |e: AlgebraError| EvalError::from((expr.span, e));
    Ok(match &expr.kind {
        ExprKind::Symbol(s) => Polynomial::Free(symbol(*s)),
        ExprKind::Rational(r) => {
            Polynomial::Free(FreePolynomial::scalar(HbarSeries::from_rational(r.clone())))
        }
        ExprKind::Neg(a) => negate(evaluate(a)?),
        ExprKind::Sum(a, b) => add(evaluate(a)?, evaluate(b)?, false),
        ExprKind::Difference(a, b) => add(evaluate(a)?, evaluate(b)?, true),
        ExprKind::Product(a, b) => multiply(evaluate(a)?, evaluate(b)?),
        ExprKind::WeylProduct(a, b) => {
            let x = to_weyl(evaluate(a)?).map_err(at)?;
            let y = to_weyl(evaluate(b)?).map_err(at)?;
            Polynomial::Weyl(x.weyl_product(&y).map_err(at)?)
        }
        ExprKind::Power(base, k) => {
            if base.kind == ExprKind::Symbol(Symbol::Hbar) {
                let one = real(Rational::one());
                Polynomial::Free(FreePolynomial::scalar(HbarSeries::monomial(one, *k)))
            } else {
                let exp = u32::try_from(*k).expect("parser rejects negative exponents");
                match evaluate(base)? {
                    Polynomial::Free(x) => Polynomial::Free(x.pow(exp)),
                    Polynomial::Weyl(x) => Polynomial::Weyl(x.weyl_pow(exp).map_err(at)?),
                }
            }
        }
        ExprKind::Call(func, args) => {
            let mut vals = Vec::with_capacity(args.len());
            for a in args {
                vals.push(evaluate(a)?);
            }
            call(*func, vals).map_err(at)?
        }
    })
}

fn symbol(s: Symbol) -> FreePolynomial {
    match s {
        Symbol::Q => FreePolynomial::letter(Letter::Q),
        Symbol::P => FreePolynomial::letter(Letter::P),
        Symbol::Rho => FreePolynomial::letter(Letter::Rho),
        Symbol::DrhoQ => FreePolynomial::letter(Letter::DrhoQ),
        Symbol::DrhoP => FreePolynomial::letter(Letter::DrhoP),
        Symbol::Hbar => FreePolynomial::scalar(HbarSeries::hbar()),
        Symbol::I => FreePolynomial::scalar(HbarSeries::i()),
    }
}

fn call(func: Func, mut vals: Vec<Polynomial>) -> Result<Polynomial, AlgebraError> {
    let second = if vals.len() > 1 { vals.pop() } else { None };
    let first = vals.pop().expect("arity checked by the parser");
    Ok(match func {
        Func::S => Polynomial::Weyl(to_weyl(first)?),
        Func::Pb => {
            let g = to_weyl(second.expect("binary"))?;
            Polynomial::Weyl(symmetrized_poisson_bracket(&to_weyl(first)?, &g)?)
        }
        Func::Comm => {
            let g = second.expect("binary").to_free();
            Polynomial::Free(commutator_bracket(&first.to_free(), &g))
        }
        Func::Dq | Func::Dp => {
            let var = if func == Func::Dq {
                Variable::Q
            } else {
                Variable::P
            };
            match first {
                Polynomial::Free(x) => Polynomial::Free(x.partial_derivative(var)),
                Polynomial::Weyl(x) => Polynomial::Weyl(x.derivative(var)),
            }
        }
        Func::Normal => Polynomial::Free(first.to_free().normal_order()),
    })
}

fn to_weyl(x: Polynomial) -> Result<WeylPolynomial, AlgebraError> {
    match x {
        Polynomial::Weyl(w) => Ok(w),
        Polynomial::Free(f) => symmetrize(&f),
    }
}

fn scalar_of(x: &Polynomial) -> Option<HbarSeries> {
    match x {
        Polynomial::Free(f) => f.as_scalar(),
        Polynomial::Weyl(w) => match w.len() {
            0 => Some(HbarSeries::zero()),
            1 => w
                .terms()
                .next()
                .filter(|(m, _)| **m == WeylMonomial::IDENTITY)
                .map(|(_, c)| c.clone()),
            _ => None,
        },
    }
}

fn negate(x: Polynomial) -> Polynomial {
    match x {
        Polynomial::Free(f) => Polynomial::Free(-f),
        Polynomial::Weyl(w) => Polynomial::Weyl(-w),
    }
}

fn add(a: Polynomial, b: Polynomial, subtract: bool) -> Polynomial {
    let b = if subtract { negate(b) } else { b };
    match (a, b) {
        (Polynomial::Free(x), Polynomial::Free(y)) => Polynomial::Free(x + y),
        (Polynomial::Weyl(x), Polynomial::Weyl(y)) => Polynomial::Weyl(x + y),
        (Polynomial::Weyl(w), Polynomial::Free(f)) | (Polynomial::Free(f), Polynomial::Weyl(w)) => {
            match f.as_scalar() {
                Some(c) => Polynomial::Weyl(w + WeylPolynomial::scalar(c)),
                None => Polynomial::Free(w.expand() + f),
            }
        }
    }
}

fn multiply(a: Polynomial, b: Polynomial) -> Polynomial {
    if let Some(c) = scalar_of(&a) {
        return scale(b, &c);
    }
    if let Some(c) = scalar_of(&b) {
        return scale(a, &c);
    }
    Polynomial::Free(a.to_free().multiply(&b.to_free()))
}

fn scale(x: Polynomial, c: &HbarSeries) -> Polynomial {
    match x {
        Polynomial::Free(f) => Polynomial::Free(f.scale(c)),
        Polynomial::Weyl(w) => Polynomial::Weyl(w.scale(c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{complex, rational};
    use crate::word::Word;

    fn free(s: &str) -> FreePolynomial {
        match evaluate_str(s).unwrap() {
            Polynomial::Free(f) => f,
            other => panic!("expected free result, got {other:?}"),
        }
    }

    fn weyl(s: &str) -> WeylPolynomial {
        match evaluate_str(s).unwrap() {
            Polynomial::Weyl(w) => w,
            other => panic!("expected weyl result, got {other:?}"),
        }
    }

    #[test]
    fn commutator_call_applies_prefactor() {
        assert_eq!(free("comm(q, p)"), FreePolynomial::one());
        assert_eq!(
            free("comm(q^2, p)"),
            FreePolynomial::q().scale(&HbarSeries::from_int(2))
        );
    }

    #[test]
    fn normal_ordering_call() {
        let expected = FreePolynomial::word(Word::q_p(1, 1))
            + FreePolynomial::scalar(HbarSeries::minus_i_hbar());
        assert_eq!(free("normal(p q)"), expected);
        assert_eq!(free("q p - i hbar"), expected);
    }

    #[test]
    fn bracket_call() {
        assert_eq!(
            weyl("pb(q^2 o p, q o p^2)"),
            WeylPolynomial::term(WeylMonomial::new(2, 2), HbarSeries::from_int(3))
        );
        assert_eq!(weyl("pb(q, p)"), WeylPolynomial::one());
    }

    #[test]
    fn symmetrizer_call() {
        assert_eq!(
            weyl("S(q^2 p^2)"),
            WeylPolynomial::monomial(WeylMonomial::new(2, 2))
        );
        assert_eq!(weyl("S(q p q p)"), weyl("S(p^2 q^2)"));
        assert!(weyl("S(hbar q)").is_zero());
    }

    #[test]
    fn weyl_context_symmetrizes_free_operands() {
        // ½(qp+pq) and qp − iħ/2 are the same operator; symmetrized
        // products with them agree.
        let a = weyl("(1/2 (q p + p q)) o (1/2 (q p + p q))");
        let b = weyl("(q p - 1/2 i hbar) o (q p - 1/2 i hbar)");
        assert_eq!(a, b);
        assert_eq!(a, WeylPolynomial::monomial(WeylMonomial::new(2, 2)));
    }

    #[test]
    fn scalars_keep_basis() {
        let w = weyl("3 (q o p)");
        assert_eq!(
            w,
            WeylPolynomial::term(WeylMonomial::new(1, 1), HbarSeries::from_int(3))
        );
        let w = weyl("pb(q, p) + 1");
        assert_eq!(
            w,
            WeylPolynomial::term(WeylMonomial::IDENTITY, HbarSeries::from_int(2))
        );
        let f = free("(q o p) + q");
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn hbar_powers_fold_into_scalars() {
        let f = free("hbar^-1 i");
        assert_eq!(
            f,
            FreePolynomial::scalar(HbarSeries::monomial(
                complex(rational(0, 1), rational(1, 1)),
                -1
            ))
        );
    }

    #[test]
    fn domain_errors_carry_spans() {
        let err = evaluate_str("S(rho q)").unwrap_err();
        let ExprError::Eval(e) = err else {
            panic!("expected eval error")
        };
        assert_eq!(e.span, Span { line: 1, column: 1 });
        assert!(matches!(e.source, AlgebraError::SymmetrizeRho(_)));
        let err = evaluate_str("q o (hbar^-1 p)").unwrap_err();
        assert!(matches!(err, ExprError::Eval(_)));
        assert!(evaluate_str("drho_q o drho_p").is_err());
    }

    #[test]
    fn derivative_calls() {
        assert_eq!(free("dq(q p q)"), free("p q + q p"));
        assert_eq!(
            weyl("dq(q^3 o p)"),
            WeylPolynomial::term(WeylMonomial::new(2, 1), HbarSeries::from_int(3))
        );
    }
}
