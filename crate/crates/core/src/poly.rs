use crate::free::FreePolynomial;
use crate::weyl::WeylPolynomial;

/// A polynomial tagged with the basis it is expressed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Polynomial {
    Free(FreePolynomial),
    Weyl(WeylPolynomial),
}

impl Polynomial {
    pub fn is_zero(&self) -> bool {
        match self {
            Polynomial::Free(x) => x.is_zero(),
            Polynomial::Weyl(x) => x.is_zero(),
        }
    }

    pub fn basis_name(&self) -> &'static str {
        match self {
            Polynomial::Free(_) => "free",
            Polynomial::Weyl(_) => "weyl",
        }
    }

    /// Free-algebra form; Weyl terms are expanded into their arrangements.
    pub fn to_free(&self) -> FreePolynomial {
        match self {
            Polynomial::Free(x) => x.clone(),
            Polynomial::Weyl(x) => x.expand(),
        }
    }
}

impl From<FreePolynomial> for Polynomial {
    fn from(x: FreePolynomial) -> Self {
        Polynomial::Free(x)
    }
}

impl From<WeylPolynomial> for Polynomial {
    fn from(x: WeylPolynomial) -> Self {
        Polynomial::Weyl(x)
    }
}
