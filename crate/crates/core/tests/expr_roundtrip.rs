use opalg_core::expr::{evaluate_str, print, ExprError, Format};
use opalg_core::scalar::{complex, rational};
use opalg_core::{
    Derivative, FreePolynomial, HbarSeries, Letter, Polynomial, WeylMonomial, WeylPolynomial, Word,
};
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = HbarSeries> {
    (-4i64..=4, 1i64..=4, -3i64..=3, -2i32..=2).prop_map(|(re, d, im, k)| {
        HbarSeries::monomial(complex(rational(re, d), rational(im, 1)), k)
    })
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        4 => Just(Letter::Q),
        4 => Just(Letter::P),
        1 => Just(Letter::Rho),
        1 => Just(Letter::DrhoQ),
        1 => Just(Letter::DrhoP),
    ]
}

fn free() -> impl Strategy<Value = FreePolynomial> {
    prop::collection::vec((prop::collection::vec(letter(), 0..6), coefficient()), 0..4)
        .prop_map(|ts| FreePolynomial::from_terms(ts.into_iter().map(|(w, c)| (Word::new(w), c))))
}

fn weyl() -> impl Strategy<Value = WeylPolynomial> {
    let deriv = prop_oneof![
        Just(None),
        Just(Some(Derivative::Q)),
        Just(Some(Derivative::P))
    ];
    prop::collection::vec(((0u32..4, 0u32..4, deriv), coefficient()), 0..4).prop_map(|ts| {
        WeylPolynomial::from_terms(ts.into_iter().map(|((n, m, d), c)| {
            let w = match d {
                Some(d) => WeylMonomial::with_derivative(n, m, d),
                None => WeylMonomial::new(n, m),
            };
            (w, c)
        }))
    })
}

/// Same basis: exact equality. Otherwise: equality as operators.
fn same_value(back: &Polynomial, x: &WeylPolynomial) -> bool {
    match back {
        Polynomial::Weyl(w) => w == x,
        Polynomial::Free(f) => f.normal_order() == x.normal_form(),
    }
}

proptest! {
    #[test]
    fn free_text_roundtrips(x in free()) {
        let text = print(&x.clone().into(), Format::Text);
        let back = evaluate_str(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back.to_free(), x, "{}", text);
    }

    #[test]
    fn weyl_text_roundtrips(x in weyl()) {
        let text = print(&x.clone().into(), Format::Text);
        let back = evaluate_str(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert!(same_value(&back, &x), "{}", text);
    }

    #[test]
    fn json_is_valid(x in free()) {
        let json = print(&x.into(), Format::Json);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&value["basis"], "free");
    }
}

#[test]
fn documented_examples() {
    let text = |s: &str| print(&evaluate_str(s).unwrap(), Format::Text);
    assert_eq!(text("pb(q, p)"), "1");
    assert_eq!(text("comm(q^2, p)"), "2 q");
    assert_eq!(
        text("normal(S(q^2 p^2))"),
        "q^2 p^2 - 2 i hbar q p - (1/2) hbar^2"
    );
}

#[test]
fn six_term_expansion_prints_every_word() {
    let s = evaluate_str("S(q^2 p^2)").unwrap();
    let expanded = print(&Polynomial::Free(s.to_free()), Format::Text);
    for w in [
        "q^2 p^2", "q p q p", "q p^2 q", "p q^2 p", "p q p q", "p^2 q^2",
    ] {
        assert!(expanded.contains(&format!("(1/6) {w}")), "{expanded}");
    }
}

#[test]
fn weyl_results_with_scalars_stay_weyl() {
    let x = WeylPolynomial::monomial(WeylMonomial::new(2, 1))
        + WeylPolynomial::scalar(HbarSeries::hbar());
    let text = print(&x.clone().into(), Format::Text);
    assert_eq!(text, "q^2 o p + hbar");
    assert_eq!(evaluate_str(&text).unwrap(), Polynomial::Weyl(x));
}

#[test]
fn errors_report_positions() {
    match evaluate_str("q o p * q") {
        Err(ExprError::Parse(e)) => assert_eq!(e.span.to_string(), "1:7"),
        other => panic!("unexpected {other:?}"),
    }
}
