//! Exact symbolic algebra of the canonical pair `(q, p)` with `[q, p] = iħ`.
//!
//! The crate provides
//!
//! * free polynomials over the letters `q, p, ρ, ∂ρ/∂q, ∂ρ/∂p` and their
//!   normal ordering ([`free`], [`rewrite`]),
//! * the symmetrizer and the Weyl basis with the symmetrized product `∘`
//!   ([`weyl`]),
//! * the symmetrized Poisson bracket, the commutator bracket and checkers for
//!   the identities relating them ([`bracket`], [`classical`]),
//! * an independent Schrödinger-representation oracle ([`oracle`]),
//! * a small expression language with text, LaTeX and JSON printers
//!   ([`expr`]),
//! * seeded verification suites ([`verify`]).

pub mod bracket;
pub mod classical;
pub mod error;
pub mod expr;
pub mod free;
pub mod multiset;
pub mod oracle;
pub mod poly;
pub mod rewrite;
pub mod scalar;
pub mod verify;
pub mod weyl;
pub mod word;

pub use bracket::{
    commutator_bracket, substitute_drho, symmetrized_poisson_bracket, IdentityReport,
};
pub use classical::ClassicalPolynomial;
pub use error::AlgebraError;
pub use free::{FreePolynomial, Variable};
pub use poly::Polynomial;
pub use scalar::{ComplexRational, HbarScalar, HbarSeries, Rational};
pub use weyl::{symmetrize, Derivative, WeylMonomial, WeylPolynomial};
pub use word::{Letter, Word};
