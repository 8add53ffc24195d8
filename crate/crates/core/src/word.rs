//! Generator letters and words over them.

use std::cmp::Ordering;
use std::fmt;

/// Generator symbol.
///
/// Only `Q` and `P` take part in rewriting. `Rho` and the two derivative
/// letters are opaque: they commute with nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Q,
    P,
    Rho,
    DrhoQ,
    DrhoP,
}

impl Letter {
    pub const ALL: [Letter; 5] = [
        Letter::Q,
        Letter::P,
        Letter::Rho,
        Letter::DrhoQ,
        Letter::DrhoP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Letter::Q => "q",
            Letter::P => "p",
            Letter::Rho => "rho",
            Letter::DrhoQ => "drho_q",
            Letter::DrhoP => "drho_p",
        }
    }

    pub fn from_name(name: &str) -> Option<Letter> {
        Letter::ALL.into_iter().find(|l| l.name() == name)
    }

    pub fn is_canonical(self) -> bool {
        matches!(self, Letter::Q | Letter::P)
    }

    pub fn is_derivative(self) -> bool {
        matches!(self, Letter::DrhoQ | Letter::DrhoP)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Letter multiplicities of a word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LetterCounts {
    pub q: usize,
    pub p: usize,
    pub rho: usize,
    pub drho_q: usize,
    pub drho_p: usize,
}

impl LetterCounts {
    pub fn derivatives(&self) -> usize {
        self.drho_q + self.drho_p
    }
}

impl std::ops::Add for LetterCounts {
    type Output = LetterCounts;

    fn add(self, o: LetterCounts) -> LetterCounts {
        LetterCounts {
            q: self.q + o.q,
            p: self.p + o.p,
            rho: self.rho + o.rho,
            drho_q: self.drho_q + o.drho_q,
            drho_p: self.drho_p + o.drho_p,
        }
    }
}

/// Ordered product of letters. The empty word is the identity operator.
///
/// Words order by length first, then letter by letter with
/// `q < p < rho < drho_q < drho_p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    /// `q^a p^b`.
    pub fn q_p(a: usize, b: usize) -> Word {
        let mut v = vec![Letter::Q; a];
        v.extend(std::iter::repeat_n(Letter::P, b));
        Word(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn counts(&self) -> LetterCounts {
        let mut c = LetterCounts::default();
        for l in &self.0 {
            match l {
                Letter::Q => c.q += 1,
                Letter::P => c.p += 1,
                Letter::Rho => c.rho += 1,
                Letter::DrhoQ => c.drho_q += 1,
                Letter::DrhoP => c.drho_p += 1,
            }
        }
        c
    }

    /// True when only `q` and `p` occur.
    pub fn is_pure(&self) -> bool {
        self.0.iter().all(|l| l.is_canonical())
    }

    /// Normal form: no `p` immediately followed by `q`.
    pub fn is_normal(&self) -> bool {
        !self.0.windows(2).any(|w| w == [Letter::P, Letter::Q])
    }

    /// Position of the leftmost `p q` pair.
    pub fn first_pq(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w == [Letter::P, Letter::Q])
    }

    pub fn without(&self, index: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(index);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Space-separated letters with runs collapsed into powers, e.g. `q^2 p q`.
/// The identity renders as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (letter, run) in runs(&self.0) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{letter}")?;
            } else {
                write!(f, "{letter}^{run}")?;
            }
        }
        Ok(())
    }
}

/// Maximal runs of equal letters.
pub fn runs(letters: &[Letter]) -> Vec<(Letter, usize)> {
    let mut out: Vec<(Letter, usize)> = Vec::new();
    for &l in letters {
        match out.last_mut() {
            Some((prev, n)) if *prev == l => *n += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}
