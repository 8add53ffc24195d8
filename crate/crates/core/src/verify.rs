//! Seeded verification suites for the algebraic identities.
//!
//! Each suite combines an exhaustive sweep over monomials up to
//! `max_degree` with `cases` random inputs drawn from a ChaCha stream seeded
//! by `seed`. Runs are sequential and every collection is ordered, so equal
//! configurations produce byte-identical reports.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::bracket::{
    check_anticommutator_identity, check_leibniz, check_leibniz_ordinary, check_obstruction,
    check_von_neumann_equivalence, check_von_neumann_with_anticommutator,
    symmetrized_poisson_bracket, IdentityReport,
};
use crate::classical::ClassicalPolynomial;
use crate::error::Result as AlgebraResult;
use crate::expr::{print, to_json, Format};
use crate::free::{FreePolynomial, Variable};
use crate::multiset::MultisetPermutations;
use crate::oracle::oracle_equal_default;
use crate::poly::Polynomial;
use crate::scalar::{rational, real, ComplexRational, HbarSeries, Rational};
use crate::weyl::{symmetrize, Derivative, WeylMonomial, WeylPolynomial};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Eq6,
    Eq8,
    Eq10,
    Eq11,
    Eq12,
    Eq14,
    Eq18_19,
    Eq20,
    Eq21,
    Jacobi,
    Hermiticity,
    Obstruction,
    Oracle,
    All,
}

impl Suite {
    /// Every concrete suite, in report order.
    pub const CONCRETE: [Suite; 13] = [
        Suite::Eq6,
        Suite::Eq8,
        Suite::Eq10,
        Suite::Eq11,
        Suite::Eq12,
        Suite::Eq14,
        Suite::Eq18_19,
        Suite::Eq20,
        Suite::Eq21,
        Suite::Jacobi,
        Suite::Hermiticity,
        Suite::Obstruction,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Eq6 => "eq6",
            Suite::Eq8 => "eq8",
            Suite::Eq10 => "eq10",
            Suite::Eq11 => "eq11",
            Suite::Eq12 => "eq12",
            Suite::Eq14 => "eq14",
            Suite::Eq18_19 => "eq18_19",
            Suite::Eq20 => "eq20",
            Suite::Eq21 => "eq21",
            Suite::Jacobi => "jacobi",
            Suite::Hermiticity => "hermiticity",
            Suite::Obstruction => "obstruction",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }

    fn stream(self) -> u64 {
        Suite::CONCRETE.iter().position(|s| *s == self).unwrap_or(0) as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::CONCRETE
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<_> = Suite::CONCRETE.iter().map(|s| s.name()).collect();
                format!(
                    "unknown suite `{s}` (expected one of {}, all)",
                    names.join(", ")
                )
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub max_degree: u32,
    pub cases: u32,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            max_degree: 6,
            cases: 200,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            ..SuiteConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.max_degree < 1 {
            return Err("max-degree must be at least 1".into());
        }
        if self.cases < 1 {
            return Err("cases must be at least 1".into());
        }
        Ok(())
    }
}

/// A counterexample: the rendered input and the residue of the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub input: String,
    pub difference: Polynomial,
}

/// A value shown alongside a check, such as both sides of a demonstration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub label: String,
    pub value: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub evidence: Vec<Evidence>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
            evidence: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one case; `difference` is `None` when it passed.
    fn record(&mut self, input: impl FnOnce() -> String, difference: Option<Polynomial>) {
        self.cases += 1;
        if let Some(difference) = difference {
            self.failures.push(Failure {
                input: input(),
                difference,
            });
        }
    }

    fn identity(&mut self, input: impl FnOnce() -> String, report: AlgebraResult<IdentityReport>) {
        match report {
            Ok(r) if r.holds() => self.record(input, None),
            Ok(r) => self.record(input, Some(r.difference)),
            Err(e) => {
                let text = format!("{} [error: {e}]", input());
                self.record(|| text, Some(Polynomial::Free(FreePolynomial::zero())));
            }
        }
    }

    fn show(&mut self, label: &str, value: impl Into<Polynomial>) {
        self.evidence.push(Evidence {
            label: label.into(),
            value: value.into(),
        });
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("plain data serializes"),
            Format::Text | Format::Latex => {
                let mut out = format!("suite {}: {}\n", self.suite, verdict(self.passed()));
                for c in &self.checks {
                    out.push_str(&format!(
                        "  {} {} ({} cases, {} failures)\n",
                        verdict(c.passed()),
                        c.name,
                        c.cases,
                        c.failures.len()
                    ));
                    for e in &c.evidence {
                        out.push_str(&format!("    {}: {}\n", e.label, print(&e.value, format)));
                    }
                    for f in &c.failures {
                        out.push_str(&format!("    input: {}\n", f.input));
                        out.push_str(&format!(
                            "    difference: {}\n",
                            print(&f.difference, format)
                        ));
                    }
                }
                out
            }
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Report", 3)?;
        st.serialize_field("suite", self.suite.name())?;
        st.serialize_field("passed", &self.passed())?;
        st.serialize_field("checks", &self.checks)?;
        st.end()
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = if self.evidence.is_empty() { 3 } else { 4 };
        let mut st = s.serialize_struct("Check", n)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("cases", &self.cases)?;
        st.serialize_field("failures", &self.failures)?;
        if !self.evidence.is_empty() {
            st.serialize_field("evidence", &self.evidence)?;
        }
        st.end()
    }
}

impl Serialize for Failure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Failure", 2)?;
        st.serialize_field("input", &self.input)?;
        st.serialize_field("difference", &to_json(&self.difference))?;
        st.end()
    }
}

impl Serialize for Evidence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Evidence", 2)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("value", &to_json(&self.value))?;
        st.end()
    }
}

/// Runs the configured suite. `All` runs every suite in [`Suite::CONCRETE`]
/// order; each suite draws from its own stream, so its checks are the same
/// whether it runs alone or inside `all`.
pub fn run(config: &SuiteConfig) -> Report {
    let suites: Vec<Suite> = match config.suite {
        Suite::All => Suite::CONCRETE.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for suite in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(suite.stream());
        let mut ctx = Ctx {
            rng,
            max_degree: config.max_degree,
            cases: config.cases,
        };
        for mut c in run_suite(suite, &mut ctx) {
            c.name = format!("{}/{}", suite.name(), c.name);
            checks.push(c);
        }
    }
    Report {
        suite: config.suite,
        checks,
    }
}

struct Ctx {
    rng: ChaCha8Rng,
    max_degree: u32,
    cases: u32,
}

fn run_suite(suite: Suite, ctx: &mut Ctx) -> Vec<Check> {
    match suite {
        Suite::Eq6 => eq6(ctx),
        Suite::Eq8 => eq8(ctx),
        Suite::Eq10 => eq10(ctx),
        Suite::Eq11 => eq11(ctx),
        Suite::Eq12 => eq12(ctx),
        Suite::Eq14 => eq14(ctx),
        Suite::Eq18_19 => eq18_19(ctx),
        Suite::Eq20 => eq20(ctx),
        Suite::Eq21 => eq21(ctx),
        Suite::Jacobi => jacobi(ctx),
        Suite::Hermiticity => hermiticity(ctx),
        Suite::Obstruction => obstruction(),
        Suite::Oracle => oracle(ctx),
        Suite::All => unreachable!("expanded by run"),
    }
}

// ---------------------------------------------------------------------------
// Random inputs

const COEFFICIENTS: [(i64, i64); 8] = [
    (1, 1),
    (-1, 1),
    (1, 2),
    (-1, 2),
    (2, 1),
    (-2, 1),
    (1, 3),
    (-1, 3),
];

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let (n, d) = *COEFFICIENTS.choose(rng).expect("nonempty");
    rational(n, d)
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> HbarSeries {
    HbarSeries::from_rational(random_rational(rng))
}

/// Exponents `(n, m)` with `n + m ≤ max_degree`: the total degree is uniform,
/// then the split.
fn random_exponents(rng: &mut ChaCha8Rng, max_degree: u32) -> (u32, u32) {
    let d = rng.gen_range(0..=max_degree);
    let n = rng.gen_range(0..=d);
    (n, d - n)
}

fn random_weyl(rng: &mut ChaCha8Rng, max_degree: u32) -> WeylPolynomial {
    let terms = rng.gen_range(1..=4);
    let mut out = WeylPolynomial::zero();
    for _ in 0..terms {
        let (n, m) = random_exponents(rng, max_degree);
        out.add_term(WeylMonomial::new(n, m), &random_coefficient(rng));
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, max_len: u32) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(
        (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Letter::Q
                } else {
                    Letter::P
                }
            })
            .collect(),
    )
}

/// Random pure free polynomial; with `graded`, coefficients also carry
/// `ħ^0`, `ħ^1` or `ħ^2`.
fn random_free(rng: &mut ChaCha8Rng, max_degree: u32, graded: bool) -> FreePolynomial {
    let terms = rng.gen_range(1..=4);
    let mut out = FreePolynomial::zero();
    for _ in 0..terms {
        let w = random_word(rng, max_degree);
        let mut c = random_coefficient(rng);
        if graded {
            c = c.shift_power(rng.gen_range(0..=2));
        }
        out.add_term(w, &c);
    }
    out
}

fn text(x: impl Into<Polynomial>) -> String {
    print(&x.into(), Format::Text)
}

fn monomials(max_degree: u32) -> Vec<WeylMonomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for n in 0..=d {
            out.push(WeylMonomial::new(n, d - n));
        }
    }
    out
}

fn mono(n: u32, m: u32) -> WeylPolynomial {
    WeylPolynomial::monomial(WeylMonomial::new(n, m))
}

fn weyl_difference(a: &WeylPolynomial, b: &WeylPolynomial) -> Option<Polynomial> {
    let d = a - b;
    (!d.is_zero()).then(|| d.into())
}

fn free_difference(a: &FreePolynomial, b: &FreePolynomial) -> Option<Polynomial> {
    let d = a - b;
    (!d.is_zero()).then(|| d.into())
}

// ---------------------------------------------------------------------------
// Suites

/// Every ordering of `n` q's and `m` p's symmetrizes to `q^n ∘ p^m`.
fn eq6(ctx: &mut Ctx) -> Vec<Check> {
    let mut orderings = Check::new("orderings_symmetrize_identically");
    for w in monomials(ctx.max_degree) {
        let target = WeylPolynomial::monomial(w);
        let letters = [vec![Letter::Q; w.n as usize], vec![Letter::P; w.m as usize]].concat();
        for arrangement in MultisetPermutations::new(letters) {
            let word = Word::new(arrangement);
            let got = symmetrize(&FreePolynomial::word(word.clone()));
            let diff = match &got {
                Ok(s) => weyl_difference(s, &target),
                Err(_) => Some(target.clone().into()),
            };
            orderings.record(|| word.to_string(), diff);
        }
    }
    let mut linear = Check::new("symmetrizer_is_linear");
    for _ in 0..ctx.cases {
        let x = random_free(&mut ctx.rng, ctx.max_degree, true);
        let y = random_free(&mut ctx.rng, ctx.max_degree, true);
        let a = random_coefficient(&mut ctx.rng);
        let lhs = symmetrize(&(&x.scale(&a) + &y));
        let rhs = symmetrize(&x).and_then(|sx| Ok(&sx.scale(&a) + &symmetrize(&y)?));
        let report = lhs.and_then(|l| Ok(IdentityReport::weyl(l, rhs?)));
        linear.identity(
            || {
                format!(
                    "x = {}; y = {}; a = {}",
                    text(x.clone()),
                    text(y.clone()),
                    text(FreePolynomial::scalar(a.clone()))
                )
            },
            report,
        );
    }
    vec![orderings, linear]
}

/// `S(x) = S(normal_order(x))`.
fn eq8(ctx: &mut Ctx) -> Vec<Check> {
    let half = HbarSeries::from_rational(rational(1, 2));
    let qp = FreePolynomial::word(Word::q_p(1, 1));
    let pq = FreePolynomial::word(Word::new(vec![Letter::P, Letter::Q]));
    let anticommutator = (&qp + &pq).scale(&half);
    let shifted = &qp + &FreePolynomial::scalar(&HbarSeries::minus_i_hbar() * &half);

    let mut witness = Check::new("half_anticommutator_vs_shifted_product");
    let report = symmetrize(&anticommutator)
        .and_then(|a| Ok(IdentityReport::weyl(a, symmetrize(&shifted)?)));
    if let Ok(r) = &report {
        witness.show("S(1/2 (q p + p q))", r.lhs.clone());
        witness.show("S(q p - (1/2) i hbar)", r.rhs.clone());
    }
    witness.identity(
        || {
            format!(
                "{} vs {}",
                text(anticommutator.clone()),
                text(shifted.clone())
            )
        },
        report,
    );

    let mut hbar = Check::new("hbar_terms_annihilated");
    for k in 1..=3 {
        let x = FreePolynomial::term(Word::q_p(1, 1), HbarSeries::hbar().shift_power(k - 1));
        let got = symmetrize(&x).map(Polynomial::Weyl);
        hbar.record(|| text(x.clone()), got.ok().filter(|s| !s.is_zero()));
    }

    let mut random = Check::new("symmetrize_ignores_normal_ordering");
    for _ in 0..ctx.cases {
        let x = random_free(&mut ctx.rng, ctx.max_degree, true);
        let report = symmetrize(&x)
            .and_then(|a| Ok(IdentityReport::weyl(a, symmetrize(&x.normal_order())?)));
        random.identity(|| text(x.clone()), report);
    }
    vec![witness, hbar, random]
}

/// Fast-path `∘` against `S(expand(x) · expand(y))`.
fn eq10(ctx: &mut Ctx) -> Vec<Check> {
    let two_step = |x: &WeylPolynomial, y: &WeylPolynomial| -> AlgebraResult<IdentityReport> {
        let fast = x.weyl_product(y)?;
        let slow = symmetrize(&x.expand().multiply(&y.expand()))?;
        Ok(IdentityReport::weyl(fast, slow))
    };
    let mut pairs = Check::new("monomial_pairs");
    let ms = monomials(ctx.max_degree);
    for a in &ms {
        for b in &ms {
            if a.degree() + b.degree() > ctx.max_degree {
                continue;
            }
            let (x, y) = (WeylPolynomial::monomial(*a), WeylPolynomial::monomial(*b));
            pairs.identity(
                || format!("({}) o ({})", text(x.clone()), text(y.clone())),
                two_step(&x, &y),
            );
        }
    }
    let mut derivative = Check::new("pairs_with_one_state_derivative");
    for a in &ms {
        for b in &ms {
            if a.degree() + b.degree() > ctx.max_degree {
                continue;
            }
            for d in [Derivative::Q, Derivative::P] {
                let x = WeylPolynomial::monomial(WeylMonomial::with_derivative(a.n, a.m, d));
                let y = WeylPolynomial::monomial(*b);
                derivative.identity(
                    || format!("({}) o ({})", text(x.clone()), text(y.clone())),
                    two_step(&x, &y),
                );
            }
        }
    }
    let mut random = Check::new("random_pairs");
    let half = (ctx.max_degree / 2).max(1);
    for _ in 0..ctx.cases {
        let x = random_weyl(&mut ctx.rng, half);
        let y = random_weyl(&mut ctx.rng, half);
        random.identity(
            || format!("({}) o ({})", text(x.clone()), text(y.clone())),
            two_step(&x, &y),
        );
    }
    vec![pairs, derivative, random]
}

/// `½(V p + p V) = V ∘ p` for `V = Σ c_n q^n`.
fn eq11(ctx: &mut Ctx) -> Vec<Check> {
    let mut monomial = Check::new("monomial_potentials");
    for n in 0..=ctx.max_degree as usize {
        let mut coeffs = vec![ComplexRational::default(); n + 1];
        coeffs[n] = real(rational(1, 1));
        let r = check_anticommutator_identity(&coeffs);
        monomial.record(
            || format!("V = q^{n}"),
            (!r.holds()).then(|| r.difference.clone()),
        );
    }
    let mut random = Check::new("random_potentials");
    for _ in 0..ctx.cases {
        let n = ctx.rng.gen_range(0..=ctx.max_degree as usize);
        let coeffs: Vec<ComplexRational> = (0..=n)
            .map(|_| real(random_rational(&mut ctx.rng)))
            .collect();
        let r = check_anticommutator_identity(&coeffs);
        random.record(
            || format!("V = {}", potential_text(&coeffs)),
            (!r.holds()).then(|| r.difference.clone()),
        );
    }
    vec![monomial, random]
}

fn potential_text(coeffs: &[ComplexRational]) -> String {
    let v = FreePolynomial::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| (Word::q_p(n, 0), HbarSeries::constant(c.clone()))),
    );
    text(v)
}

/// `∂/∂q (q^n ∘ p^m) = n q^{n−1} ∘ p^m` (and the `p` analogue) checked on
/// the full expansions.
fn eq12(ctx: &mut Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    for (var, name) in [
        (Variable::Q, "dq_of_expansion"),
        (Variable::P, "dp_of_expansion"),
    ] {
        let mut c = Check::new(name);
        for w in monomials(ctx.max_degree) {
            let x = WeylPolynomial::monomial(w);
            let lhs = x.expand().partial_derivative(var);
            let rhs = x.derivative(var).expand();
            c.record(|| text(x.clone()), free_difference(&lhs, &rhs));
        }
        out.push(c);
    }
    let mut random = Check::new("random_polynomials");
    for _ in 0..ctx.cases {
        let x = random_weyl(&mut ctx.rng, ctx.max_degree);
        let var = if ctx.rng.gen_bool(0.5) {
            Variable::Q
        } else {
            Variable::P
        };
        let lhs = x.expand().partial_derivative(var);
        let rhs = x.derivative(var).expand();
        random.record(
            || format!("d{}({})", var.letter().name(), text(x.clone())),
            free_difference(&lhs, &rhs),
        );
    }
    out.push(random);
    out
}

/// Leibniz rule with `∘`, plus the witness that it fails with the ordinary
/// product.
fn eq14(ctx: &mut Ctx) -> Vec<Check> {
    let mut exhaustive = Check::new("leibniz_monomial_triples");
    let ms = monomials(ctx.max_degree);
    for_each_triple(&ms, |f, g, h| {
        exhaustive.identity(|| triple_text(f, g, h), check_leibniz(f, g, h));
    });
    let mut random = Check::new("leibniz_random_triples");
    for _ in 0..ctx.cases {
        let (f, g, h) = random_triple(ctx);
        random.identity(|| triple_text(&f, &g, &h), check_leibniz(&f, &g, &h));
    }

    let mut witness = Check::new("leibniz_with_ordinary_product_fails");
    let (f, g, h) = (mono(1, 0), mono(1, 1), mono(0, 1));
    match check_leibniz_ordinary(&f, &g, &h) {
        Ok(r) => {
            witness.show(
                &format!("difference for {}", triple_text(&f, &g, &h)),
                r.difference.clone(),
            );
            witness.record(
                || triple_text(&f, &g, &h),
                r.holds().then(|| r.difference.clone()),
            );
        }
        Err(e) => witness.record(
            || format!("{} [error: {e}]", triple_text(&f, &g, &h)),
            Some(Polynomial::Free(FreePolynomial::zero())),
        ),
    }
    vec![exhaustive, random, witness]
}

/// Triples of monomials, each of degree at most `max_degree`.
fn for_each_triple(
    ms: &[WeylMonomial],
    mut f: impl FnMut(&WeylPolynomial, &WeylPolynomial, &WeylPolynomial),
) {
    for a in ms {
        for b in ms {
            for c in ms {
                f(
                    &WeylPolynomial::monomial(*a),
                    &WeylPolynomial::monomial(*b),
                    &WeylPolynomial::monomial(*c),
                );
            }
        }
    }
}

fn random_triple(ctx: &mut Ctx) -> (WeylPolynomial, WeylPolynomial, WeylPolynomial) {
    let d = ctx.max_degree;
    (
        random_weyl(&mut ctx.rng, d),
        random_weyl(&mut ctx.rng, d),
        random_weyl(&mut ctx.rng, d),
    )
}

fn triple_text(f: &WeylPolynomial, g: &WeylPolynomial, h: &WeylPolynomial) -> String {
    format!(
        "f = {}; g = {}; h = {}",
        text(f.clone()),
        text(g.clone()),
        text(h.clone())
    )
}

fn pb(f: &WeylPolynomial, g: &WeylPolynomial) -> AlgebraResult<WeylPolynomial> {
    symmetrized_poisson_bracket(f, g)
}

fn jacobi_report(
    f: &WeylPolynomial,
    g: &WeylPolynomial,
    h: &WeylPolynomial,
) -> AlgebraResult<IdentityReport> {
    let sum = &(&pb(f, &pb(g, h)?)? + &pb(g, &pb(h, f)?)?) + &pb(h, &pb(f, g)?)?;
    Ok(IdentityReport::weyl(sum, WeylPolynomial::zero()))
}

fn antisymmetry_report(f: &WeylPolynomial, g: &WeylPolynomial) -> AlgebraResult<IdentityReport> {
    Ok(IdentityReport::weyl(pb(f, g)?, -pb(g, f)?))
}

fn bilinearity_report(
    a: &HbarSeries,
    f: &WeylPolynomial,
    g: &WeylPolynomial,
    h: &WeylPolynomial,
) -> AlgebraResult<IdentityReport> {
    let lhs = pb(&(&f.scale(a) + g), h)?;
    let rhs = &pb(f, h)?.scale(a) + &pb(g, h)?;
    Ok(IdentityReport::weyl(lhs, rhs))
}

/// Antisymmetry, bilinearity and the Jacobi identity of `{·,·}_S`, at
/// bounded degree.
fn jacobi(ctx: &mut Ctx) -> Vec<Check> {
    let ms = monomials(ctx.max_degree);
    let mut antisymmetry = Check::new("antisymmetry_monomial_pairs");
    for a in &ms {
        for b in &ms {
            if a.degree() + b.degree() > ctx.max_degree {
                continue;
            }
            let (f, g) = (WeylPolynomial::monomial(*a), WeylPolynomial::monomial(*b));
            antisymmetry.identity(
                || format!("f = {}; g = {}", text(f.clone()), text(g.clone())),
                antisymmetry_report(&f, &g),
            );
        }
    }
    let mut jacobi = Check::new("jacobi_monomial_triples");
    for_each_triple(&ms, |f, g, h| {
        jacobi.identity(|| triple_text(f, g, h), jacobi_report(f, g, h));
    });
    let mut random = Check::new("jacobi_random_triples");
    let mut random_anti = Check::new("antisymmetry_random_pairs");
    let mut bilinear = Check::new("bilinearity_random");
    for _ in 0..ctx.cases {
        let (f, g, h) = random_triple(ctx);
        let a = random_coefficient(&mut ctx.rng);
        random.identity(|| triple_text(&f, &g, &h), jacobi_report(&f, &g, &h));
        random_anti.identity(
            || format!("f = {}; g = {}", text(f.clone()), text(g.clone())),
            antisymmetry_report(&f, &g),
        );
        bilinear.identity(
            || {
                format!(
                    "{}; a = {}",
                    triple_text(&f, &g, &h),
                    text(WeylPolynomial::scalar(a.clone()))
                )
            },
            bilinearity_report(&a, &f, &g, &h),
        );
    }
    vec![antisymmetry, jacobi, random, random_anti, bilinear]
}

/// Displayed expansions with one state derivative: `½(p ∂ρ/∂q + ∂ρ/∂q p)`
/// and `(1/(n+1)) Σ_k q^k ∂ρ/∂p q^{n−k}`, and the mirrored forms.
fn eq18_19(ctx: &mut Ctx) -> Vec<Check> {
    let mut single = Check::new("single_p_with_drho_q");
    let x = WeylMonomial::with_derivative(0, 1, Derivative::Q);
    let expected = sandwich(Letter::P, 1, Letter::DrhoQ);
    single.record(
        || text(WeylPolynomial::monomial(x)),
        free_difference(&x.expand(), &expected),
    );

    let mut out = vec![single];
    for (power, deriv, name) in [
        (Letter::Q, Derivative::P, "q_power_with_drho_p"),
        (Letter::P, Derivative::Q, "p_power_with_drho_q"),
        (Letter::Q, Derivative::Q, "q_power_with_drho_q"),
        (Letter::P, Derivative::P, "p_power_with_drho_p"),
    ] {
        let mut c = Check::new(name);
        for n in 0..=ctx.max_degree {
            let x = if power == Letter::Q {
                WeylMonomial::with_derivative(n, 0, deriv)
            } else {
                WeylMonomial::with_derivative(0, n, deriv)
            };
            let expected = sandwich(power, n as usize, deriv.letter());
            c.record(
                || text(WeylPolynomial::monomial(x)),
                free_difference(&x.expand(), &expected),
            );
        }
        out.push(c);
    }
    out
}

/// `(1/(n+1)) Σ_{k=0}^{n} a^k d a^{n−k}`.
fn sandwich(a: Letter, n: usize, d: Letter) -> FreePolynomial {
    let weight = HbarSeries::from_rational(rational(1, n as i64 + 1));
    FreePolynomial::from_terms((0..=n).map(|k| {
        let mut letters = vec![a; k];
        letters.push(d);
        letters.extend(std::iter::repeat_n(a, n - k));
        (Word::new(letters), weight.clone())
    }))
}

/// `{H, ρ}_S = (1/iħ)[H, ρ]` for `H = p²/2m + V(q)`, and the failure of the
/// anti-commutator variant from `q³` on.
fn eq20(ctx: &mut Ctx) -> Vec<Check> {
    let mut hamiltonians = Check::new("hamiltonian_von_neumann");
    for _ in 0..ctx.cases {
        let mass = random_rational(&mut ctx.rng).abs() * rational(ctx.rng.gen_range(1..=5), 1);
        let kinetic = HbarSeries::from_rational(rational(1, 2) / mass);
        let mut h = WeylPolynomial::term(WeylMonomial::new(0, 2), kinetic);
        let n = ctx.rng.gen_range(0..=ctx.max_degree);
        for k in 0..=n {
            h.add_term(WeylMonomial::new(k, 0), &random_coefficient(&mut ctx.rng));
        }
        hamiltonians.identity(
            || format!("H = {}", text(h.clone())),
            check_von_neumann_equivalence(&h),
        );
    }

    let mut anti = Check::new("anticommutator_variant_fails_from_cubic");
    for n in 0..=ctx.max_degree.max(3) {
        let v = mono(n, 0);
        match check_von_neumann_with_anticommutator(&v) {
            Ok(r) => {
                let expected_to_hold = n < 3;
                if n == 3 {
                    anti.show("difference for V = q^3", r.difference.clone());
                }
                let bad = r.holds() != expected_to_hold;
                anti.record(
                    || {
                        format!(
                            "V = q^{n} (expected {})",
                            if expected_to_hold { "equal" } else { "unequal" }
                        )
                    },
                    bad.then(|| r.difference.clone()),
                );
            }
            Err(e) => anti.record(
                || format!("V = q^{n} [error: {e}]"),
                Some(Polynomial::Free(FreePolynomial::zero())),
            ),
        }
    }
    vec![hamiltonians, anti]
}

/// `{F, ρ}_S = (1/iħ)[F, ρ]` for every pure monomial and random
/// polynomials.
fn eq21(ctx: &mut Ctx) -> Vec<Check> {
    let mut monomial = Check::new("von_neumann_monomials");
    for w in monomials(ctx.max_degree) {
        let f = WeylPolynomial::monomial(w);
        monomial.identity(|| text(f.clone()), check_von_neumann_equivalence(&f));
    }
    let mut random = Check::new("von_neumann_random");
    for _ in 0..ctx.cases {
        let f = random_weyl(&mut ctx.rng, ctx.max_degree);
        random.identity(|| text(f.clone()), check_von_neumann_equivalence(&f));
    }
    vec![monomial, random]
}

/// `expand(q^n ∘ p^m)` is self-adjoint; real combinations stay self-adjoint.
fn hermiticity(ctx: &mut Ctx) -> Vec<Check> {
    let self_adjoint = |x: &FreePolynomial| -> Option<Polynomial> {
        match x.adjoint() {
            Ok(a) => free_difference(&a, x),
            Err(_) => Some(x.clone().into()),
        }
    };
    let mut monomial = Check::new("weyl_monomials_self_adjoint");
    for w in monomials(ctx.max_degree) {
        let x = WeylPolynomial::monomial(w);
        monomial.record(|| text(x.clone()), self_adjoint(&x.expand()));
    }
    let mut random = Check::new("real_combinations_self_adjoint");
    for _ in 0..ctx.cases {
        let x = random_weyl(&mut ctx.rng, ctx.max_degree);
        random.record(|| text(x.clone()), self_adjoint(&x.expand()));
    }
    vec![monomial, random]
}

/// The Groenewold pair `(q³, p³)` against `3 (q²p, qp²)`.
fn obstruction() -> Vec<Check> {
    let c = ClassicalPolynomial::monomial;
    let first = (c(3, 0), c(0, 3));
    let second = (c(2, 1), c(1, 2));
    let input = "{q^3, p^3} vs {3 q^2 p, q p^2}";
    let mut agree = Check::new("symmetrized_brackets_agree");
    let mut differ = Check::new("commutator_brackets_differ_at_hbar2");
    match check_obstruction((&first.0, &first.1), (&second.0, &second.1)) {
        Ok(r) => {
            let nine = WeylPolynomial::term(WeylMonomial::new(2, 2), HbarSeries::from_int(9));
            agree.show("first", r.symmetrized.lhs.clone());
            agree.show("second", r.symmetrized.rhs.clone());
            let matches_nine = r.symmetrized.lhs == Polynomial::Weyl(nine.clone());
            let residue = if !r.symmetrized.holds() {
                Some(r.symmetrized.difference.clone())
            } else if !matches_nine {
                Some((&nine - &to_weyl_or_zero(&r.symmetrized.lhs)).into())
            } else {
                None
            };
            agree.record(|| input.into(), residue);

            differ.show("first", r.commutator.lhs.clone());
            differ.show("second", r.commutator.rhs.clone());
            differ.show("difference", r.commutator.difference.clone());
            let ok = !r.commutator.holds()
                && r.commutator_discrepancy_min_hbar_power()
                    .is_some_and(|k| k >= 2);
            differ.record(
                || input.into(),
                (!ok).then(|| r.commutator.difference.clone()),
            );
        }
        Err(e) => {
            let zero = || Some(Polynomial::Free(FreePolynomial::zero()));
            agree.record(|| format!("{input} [error: {e}]"), zero());
            differ.record(|| format!("{input} [error: {e}]"), zero());
        }
    }
    vec![agree, differ]
}

fn to_weyl_or_zero(x: &Polynomial) -> WeylPolynomial {
    match x {
        Polynomial::Weyl(w) => w.clone(),
        Polynomial::Free(_) => WeylPolynomial::zero(),
    }
}

/// Normal-form equality and Schrödinger-representation equality agree.
///
/// Cases rotate through CCR-equivalent rewrites, small perturbations and
/// independent pairs, so both verdicts occur.
fn oracle(ctx: &mut Ctx) -> Vec<Check> {
    let mut agree = Check::new("normal_form_matches_representation");
    let mut equal = 0usize;
    for case in 0..ctx.cases {
        let x = random_free(&mut ctx.rng, ctx.max_degree, false);
        let y = match case % 3 {
            0 => ccr_rewrite(&mut ctx.rng, &x, ctx.max_degree),
            1 => {
                let w = random_word(&mut ctx.rng, ctx.max_degree);
                &ccr_rewrite(&mut ctx.rng, &x, ctx.max_degree)
                    + &FreePolynomial::term(w, random_coefficient(&mut ctx.rng))
            }
            _ => random_free(&mut ctx.rng, ctx.max_degree, false),
        };
        let by_normal_form = x.normal_order() == y.normal_order();
        equal += by_normal_form as usize;
        let diff = match oracle_equal_default(&x, &y) {
            Ok(by_oracle) if by_oracle == by_normal_form => None,
            _ => Some((&x - &y).normal_order().into()),
        };
        agree.record(
            || format!("{} vs {}", text(x.clone()), text(y.clone())),
            diff,
        );
    }
    let mut summary = Check::new("equal_pairs_present");
    summary.record(
        || "no pair was equal".into(),
        (equal == 0).then(|| Polynomial::Free(FreePolynomial::zero())),
    );
    vec![agree, summary]
}

/// Applies a few random CCR moves `p q ↔ q p − iħ` to random terms.
fn ccr_rewrite(rng: &mut ChaCha8Rng, x: &FreePolynomial, max_degree: u32) -> FreePolynomial {
    let mut out = x.clone();
    for _ in 0..rng.gen_range(1..=max_degree.max(1)) {
        let words: Vec<Word> = out.words().filter(|w| w.len() >= 2).cloned().collect();
        let Some(word) = words.choose(rng).cloned() else {
            break;
        };
        let letters = word.letters();
        let sites: Vec<usize> = (0..letters.len() - 1)
            .filter(|&i| letters[i] != letters[i + 1])
            .collect();
        let Some(&i) = sites.choose(rng) else {
            continue;
        };
        let coeff = out.coefficient(&word);
        let mut swapped = letters.to_vec();
        swapped.swap(i, i + 1);
        let mut contracted = letters[..i].to_vec();
        contracted.extend_from_slice(&letters[i + 2..]);
        // pq = qp − iħ and qp = pq + iħ.
        let shift = if letters[i] == Letter::P {
            HbarSeries::minus_i_hbar()
        } else {
            -&HbarSeries::minus_i_hbar()
        };
        out.add_term(word, &-&coeff);
        out.add_term(Word::new(swapped), &coeff);
        out.add_term(Word::new(contracted), &(&coeff * &shift));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> SuiteConfig {
        SuiteConfig {
            suite,
            max_degree: 3,
            cases: 10,
            seed: 7,
        }
    }

    #[test]
    fn every_suite_passes_at_small_size() {
        for suite in Suite::CONCRETE {
            let r = run(&small(suite));
            assert!(r.passed(), "{}", r.render(Format::Text));
            assert!(
                r.checks.iter().all(|c| c.cases > 0),
                "{suite} has an empty check"
            );
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run(&small(Suite::Oracle)).render(Format::Json);
        let b = run(&small(Suite::Oracle)).render(Format::Json);
        assert_eq!(a, b);
    }

    #[test]
    fn suite_is_independent_of_all() {
        let alone = run(&small(Suite::Eq21));
        let all = run(&small(Suite::All));
        let inside: Vec<_> = all
            .checks
            .iter()
            .filter(|c| c.name.starts_with("eq21/"))
            .cloned()
            .collect();
        assert_eq!(alone.checks, inside);
    }

    #[test]
    fn ccr_rewrites_preserve_the_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = random_free(&mut rng, 5, false);
            let y = ccr_rewrite(&mut rng, &x, 5);
            assert_eq!(x.normal_order(), y.normal_order());
        }
    }

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        let c = SuiteConfig {
            cases: 0,
            ..SuiteConfig::default()
        };
        assert!(c.validate().is_err());
        assert_eq!("eq18_19".parse::<Suite>(), Ok(Suite::Eq18_19));
        assert!("eq7".parse::<Suite>().is_err());
    }

    #[test]
    fn failures_serialize_with_result_json() {
        let mut c = Check::new("x");
        c.record(|| "q".into(), Some(Polynomial::Free(FreePolynomial::q())));
        let r = Report {
            suite: Suite::Eq6,
            checks: vec![c],
        };
        let json: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(json["passed"], false);
        assert_eq!(
            json["checks"][0]["failures"][0]["difference"]["basis"],
            "free"
        );
    }
}
