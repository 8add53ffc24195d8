//! Exact coefficients graded by powers of ħ.
//!
//! ħ never takes a numeric value. A coefficient is a finite Laurent series
//! `Σ_k c_k ħ^k` whose entries `c_k` are complex numbers with arbitrary
//! precision rational real and imaginary parts.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational.
pub type Rational = BigRational;

/// Complex number with exact rational parts.
pub type ComplexRational = Complex<BigRational>;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn complex(re: Rational, im: Rational) -> ComplexRational {
    Complex::new(re, im)
}

pub fn real(re: Rational) -> ComplexRational {
    Complex::new(re, Rational::zero())
}

pub fn imag_unit() -> ComplexRational {
    Complex::new(Rational::zero(), Rational::one())
}

/// `c ħ^k` for a single power `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HbarScalar {
    value: ComplexRational,
    hbar_power: i32,
}

impl HbarScalar {
    /// Zero is normalized to power 0 so that it is unique.
    pub fn new(value: ComplexRational, hbar_power: i32) -> Self {
        let hbar_power = if value.is_zero() { 0 } else { hbar_power };
        HbarScalar { value, hbar_power }
    }

    pub fn zero() -> Self {
        HbarScalar::new(ComplexRational::zero(), 0)
    }

    pub fn one() -> Self {
        HbarScalar::new(ComplexRational::one(), 0)
    }

    pub fn value(&self) -> &ComplexRational {
        &self.value
    }

    pub fn re(&self) -> &Rational {
        &self.value.re
    }

    pub fn im(&self) -> &Rational {
        &self.value.im
    }

    pub fn hbar_power(&self) -> i32 {
        self.hbar_power
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn conj(&self) -> Self {
        HbarScalar::new(self.value.conj(), self.hbar_power)
    }

    /// Sum of two scalars of the same ħ grade; `None` if the grades differ
    /// and neither side is zero.
    pub fn checked_add(&self, other: &HbarScalar) -> Option<HbarScalar> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        (self.hbar_power == other.hbar_power)
            .then(|| HbarScalar::new(&self.value + &other.value, self.hbar_power))
    }
}

impl Mul for &HbarScalar {
    type Output = HbarScalar;

    fn mul(self, rhs: &HbarScalar) -> HbarScalar {
        HbarScalar::new(&self.value * &rhs.value, self.hbar_power + rhs.hbar_power)
    }
}

/// Finite sum `Σ_k c_k ħ^k` with no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HbarSeries {
    terms: BTreeMap<i32, ComplexRational>,
}

impl HbarSeries {
    pub fn zero() -> Self {
        HbarSeries::default()
    }

    pub fn one() -> Self {
        HbarSeries::constant(ComplexRational::one())
    }

    pub fn constant(value: ComplexRational) -> Self {
        HbarSeries::monomial(value, 0)
    }

    pub fn from_rational(value: Rational) -> Self {
        HbarSeries::constant(real(value))
    }

    pub fn from_int(value: i64) -> Self {
        HbarSeries::from_rational(Rational::from_integer(value.into()))
    }

    /// `value · ħ^power`.
    pub fn monomial(value: ComplexRational, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(power, value);
        }
        HbarSeries { terms }
    }

    /// The pure symbol ħ.
    pub fn hbar() -> Self {
        HbarSeries::monomial(ComplexRational::one(), 1)
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        HbarSeries::constant(imag_unit())
    }

    /// `1/(iħ) = -i ħ^{-1}`.
    pub fn inverse_i_hbar() -> Self {
        HbarSeries::monomial(-imag_unit(), -1)
    }

    /// `-iħ`, the coefficient produced by one application of `pq → qp − iħ`.
    pub fn minus_i_hbar() -> Self {
        HbarSeries::monomial(-imag_unit(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(power, coefficient)` in ascending power order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &ComplexRational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn scalars(&self) -> impl Iterator<Item = HbarScalar> + '_ {
        self.terms
            .iter()
            .map(|(k, v)| HbarScalar::new(v.clone(), *k))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, power: i32) -> ComplexRational {
        self.terms
            .get(&power)
            .cloned()
            .unwrap_or_else(ComplexRational::zero)
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Keeps only the `ħ^0` entry.
    pub fn classical_part(&self) -> ComplexRational {
        self.coefficient(0)
    }

    pub fn add_scalar(&mut self, value: &ComplexRational, power: i32) {
        if value.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(power)
            .or_insert_with(ComplexRational::zero);
        *entry += value;
        if entry.is_zero() {
            self.terms.remove(&power);
        }
    }

    pub fn scale(&self, factor: &ComplexRational) -> HbarSeries {
        if factor.is_zero() {
            return HbarSeries::zero();
        }
        HbarSeries {
            terms: self.terms.iter().map(|(k, v)| (*k, v * factor)).collect(),
        }
    }

    pub fn scale_rational(&self, factor: &Rational) -> HbarSeries {
        self.scale(&real(factor.clone()))
    }

    pub fn shift_power(&self, by: i32) -> HbarSeries {
        HbarSeries {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k + by, v.clone()))
                .collect(),
        }
    }

    pub fn conj(&self) -> HbarSeries {
        HbarSeries {
            terms: self.terms.iter().map(|(k, v)| (*k, v.conj())).collect(),
        }
    }

    /// True when every entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|v| v.im.is_zero())
    }
}

impl From<HbarScalar> for HbarSeries {
    fn from(s: HbarScalar) -> Self {
        HbarSeries::monomial(s.value, s.hbar_power)
    }
}

impl AddAssign<&HbarSeries> for HbarSeries {
    fn add_assign(&mut self, rhs: &HbarSeries) {
        for (k, v) in &rhs.terms {
            self.add_scalar(v, *k);
        }
    }
}

impl SubAssign<&HbarSeries> for HbarSeries {
    fn sub_assign(&mut self, rhs: &HbarSeries) {
        for (k, v) in &rhs.terms {
            self.add_scalar(&-v.clone(), *k);
        }
    }
}

impl Add for &HbarSeries {
    type Output = HbarSeries;

    fn add(self, rhs: &HbarSeries) -> HbarSeries {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &HbarSeries {
    type Output = HbarSeries;

    fn sub(self, rhs: &HbarSeries) -> HbarSeries {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &HbarSeries {
    type Output = HbarSeries;

    fn neg(self) -> HbarSeries {
        HbarSeries {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

impl Mul for &HbarSeries {
    type Output = HbarSeries;

    fn mul(self, rhs: &HbarSeries) -> HbarSeries {
        let mut out = HbarSeries::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                out.add_scalar(&(va * vb), ka + kb);
            }
        }
        out
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for HbarScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {} i) hbar^{}",
            format_rational(self.re()),
            format_rational(self.im()),
            self.hbar_power
        )
    }
}
