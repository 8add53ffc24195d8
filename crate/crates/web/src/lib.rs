//! Browser bindings. Each exported function wraps a plain Rust function of
//! the same shape that returns `Result<String, String>`, so the logic is
//! testable natively.

use opalg_core::expr::{evaluate_str, print, Format};
use opalg_core::verify::{run, Suite, SuiteConfig};
use opalg_core::{Derivative, Polynomial, WeylMonomial};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Evaluates an expression; Weyl results in text or LaTeX also get their
/// expansion on a second line.
pub fn evaluate_expression(input: &str, format: &str) -> Result<String, String> {
    let format: Format = format.parse()?;
    let value = evaluate_str(input).map_err(|e| e.to_string())?;
    let mut out = print(&value, format);
    if let (Polynomial::Weyl(w), Format::Text | Format::Latex) = (&value, format) {
        let expanded = print(&Polynomial::Free(w.expand()), format);
        if expanded != out {
            out = format!("{out}\n= {expanded}");
        }
    }
    Ok(out)
}

/// All arrangements of `q^n ∘ p^m` (optionally with one state derivative)
/// as JSON: `{ monomial, count, weight, words: [..], normal_form }`.
pub fn expansion_json(n: u32, m: u32, deriv: &str) -> Result<String, String> {
    if n + m > 12 {
        return Err("n + m is limited to 12 in the demo".into());
    }
    let w = match deriv {
        "" | "none" => WeylMonomial::new(n, m),
        "drho_q" => WeylMonomial::with_derivative(n, m, Derivative::Q),
        "drho_p" => WeylMonomial::with_derivative(n, m, Derivative::P),
        other => return Err(format!("unknown derivative `{other}`")),
    };
    let monomial = Polynomial::Weyl(opalg_core::WeylPolynomial::monomial(w));
    let expanded = w.expand();
    let words: Vec<String> = expanded.words().map(|w| w.to_string()).collect();
    let normal_form = if w.deriv.is_none() {
        print(&Polynomial::Free(w.normal_form()), Format::Text)
    } else {
        String::new()
    };
    Ok(json!({
        "monomial": print(&monomial, Format::Text),
        "count": w.arrangement_count().to_string(),
        "weight": w.arrangement_weight().to_string(),
        "words": words,
        "normal_form": normal_form,
    })
    .to_string())
}

/// Text report of one verification suite.
pub fn suite_report(suite: &str, max_degree: u32, cases: u32, seed: u32) -> Result<String, String> {
    let config = SuiteConfig {
        suite: suite.parse()?,
        max_degree,
        cases,
        seed: seed.into(),
    };
    config.validate()?;
    if config.suite == Suite::All {
        return Err("run suites one at a time in the browser".into());
    }
    Ok(run(&config).render(Format::Text))
}

#[wasm_bindgen]
pub fn evaluate(input: &str, format: &str) -> Result<String, JsError> {
    evaluate_expression(input, format).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn weyl_expansion(n: u32, m: u32, deriv: &str) -> Result<String, JsError> {
    expansion_json(n, m, deriv).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify_suite(
    suite: &str,
    max_degree: u32,
    cases: u32,
    seed: u32,
) -> Result<String, JsError> {
    suite_report(suite, max_degree, cases, seed).map_err(|e| JsError::new(&e))
}
