use thiserror::Error;

use crate::word::Word;

/// Domain violations raised by the algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("adjoint is only defined on words in q and p, found `{0}`")]
    AdjointOfStateWord(Word),

    #[error("the symmetrizer does not act on the bare state letter rho (word `{0}`)")]
    SymmetrizeRho(Word),

    #[error("word `{0}` carries more than one derivative letter")]
    MultipleDerivatives(Word),

    #[error("the symmetrizer is undefined on negative powers of hbar (hbar^{power} on `{word}`)")]
    NegativeHbarPower { word: Word, power: i32 },

    #[error("symmetrized product of two derivative factors leaves the supported fragment")]
    UnsupportedFragment,

    #[error("the Schroedinger representation only acts on q and p, found `{0}`")]
    NonCanonicalLetter(Word),

    #[error("dequantize needs hbar-free pure Weyl terms: {0}")]
    NotClassical(String),

    #[error("expected an observable without derivative-of-state letters")]
    DerivativeInObservable,

    #[error("classical brackets are not proportional: {0}")]
    BracketMismatch(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
