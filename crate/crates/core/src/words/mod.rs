//! Free words over interned generator alphabets, presentations, the word
//! parser, and abelianization of finite presentations.

mod abelian;
mod parse;
mod presentation;

pub use abelian::{abelianization, smith_diagonal, Abelianization};
pub use parse::{format_word, parse_word, parse_word_with, ParseError};
pub use presentation::{valid_ident, Presentation, PresentationError};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// The alphabet `{a, t}` used for Baumslag–Solitar words; `a` is id 0, `t` is id 1.
pub fn bs_alphabet() -> Alphabet {
    Alphabet::from_names(&["a", "t"])
}

/// Index of a generator in some [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered, duplicate-free list of generator names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, GenId>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Self {
        let mut a = Self::new();
        for n in names {
            a.intern(n.as_ref());
        }
        a
    }

    /// Returns the id of `name`, adding it if absent.
    pub fn intern(&mut self, name: &str) -> GenId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = GenId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.names[id.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: GenId,
    pub exp: i64,
}

/// A word in a free group: a sequence of generator powers.
///
/// Words built through the public constructors are kept freely reduced
/// (no zero exponents, no two adjacent letters on the same generator).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn gen(g: GenId) -> Self {
        Self::power(g, 1)
    }

    pub fn power(g: GenId, exp: i64) -> Self {
        Self::from_letters(vec![Letter { gen: g, exp }])
    }

    /// Builds a word from raw letters and freely reduces it.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }.free_reduce()
    }

    pub fn from_pairs<It: IntoIterator<Item = (GenId, i64)>>(it: It) -> Self {
        Self::from_letters(it.into_iter().map(|(gen, exp)| Letter { gen, exp }).collect())
    }

    /// Raw constructor that skips reduction; for tests of `free_reduce` itself.
    pub fn unreduced(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    /// Merges adjacent letters on the same generator and drops zero
    /// exponents until nothing changes. A stack makes this a single pass.
    pub fn free_reduce(self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in self.letters {
            if l.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.gen == l.gen => {
                    top.exp += l.exp;
                    if top.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.iter().all(|l| l.exp != 0)
            && self.letters.windows(2).all(|w| w[0].gen != w[1].gen)
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { gen: l.gen, exp: -l.exp })
                .collect(),
        }
        .free_reduce()
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }.free_reduce()
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }.free_reduce()
    }

    /// `c^-1 w c`.
    pub fn conjugate(&self, by: &Word) -> Self {
        by.inverse().concat(self).concat(by)
    }

    /// `u^-1 v^-1 u v`.
    pub fn commutator(u: &Word, v: &Word) -> Self {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    pub fn exponent_sum(&self, g: GenId) -> i64 {
        self.letters.iter().filter(|l| l.gen == g).map(|l| l.exp).sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = GenId> + '_ {
        self.letters.iter().map(|l| l.gen)
    }

    /// Replaces every generator through `f` (a letter `g^e` becomes `f(g)^e`).
    pub fn substitute<F: FnMut(GenId) -> Word>(&self, mut f: F) -> Self {
        let mut letters = Vec::new();
        for l in &self.letters {
            letters.extend_from_slice(&f(l.gen).pow(l.exp).letters);
        }
        Word { letters }.free_reduce()
    }

    /// Cyclically reduced form: strips matching first/last letters.
    pub fn cyclic_reduce(&self) -> Self {
        let mut letters = self.letters.clone();
        loop {
            if letters.len() < 2 {
                return Word { letters };
            }
            let (first, last) = (letters[0], letters[letters.len() - 1]);
            if first.gen != last.gen {
                return Word { letters };
            }
            let merged = first.exp + last.exp;
            letters.pop();
            if merged == 0 {
                letters.remove(0);
            } else {
                letters[0].exp = merged;
                return Word { letters };
            }
        }
    }

    /// All cyclic rotations of the cyclic reduction, at syllable boundaries.
    fn rotations(&self) -> Vec<Vec<Letter>> {
        let c = self.cyclic_reduce().letters;
        (0..c.len().max(1))
            .map(|i| c[i..].iter().chain(&c[..i]).copied().collect())
            .collect()
    }

    /// True iff the two words define the same relator up to cyclic
    /// permutation and inversion, which generate the same normal closure.
    pub fn same_relator(&self, other: &Word) -> bool {
        let target = other.cyclic_reduce();
        let inv = target.inverse().cyclic_reduce();
        self.rotations()
            .into_iter()
            .any(|r| r == target.letters || r == inv.letters)
    }
}

/// Renders a word against an alphabet.
pub struct Display<'a> {
    pub word: &'a Word,
    pub alphabet: &'a [String],
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = &self.alphabet[l.gen.index()];
            if l.exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: GenId = GenId(0);
    const B: GenId = GenId(1);

    fn l(gen: GenId, exp: i64) -> Letter {
        Letter { gen, exp }
    }

    #[test]
    fn free_reduce_examples() {
        assert!(Word::unreduced(vec![l(A, 1), l(A, -1)]).free_reduce().is_empty());
        assert_eq!(
            Word::unreduced(vec![l(A, 2), l(A, 3), l(B, 1)]).free_reduce(),
            Word::unreduced(vec![l(A, 5), l(B, 1)])
        );
        assert!(Word::unreduced(vec![l(A, 1), l(B, 1), l(B, -1), l(A, -1)])
            .free_reduce()
            .is_empty());
        assert!(Word::unreduced(vec![l(A, 0), l(B, 0)]).free_reduce().is_empty());
    }

    #[test]
    fn invert_and_concat() {
        let ab = Word::from_pairs([(A, 1), (B, 1)]);
        assert_eq!(ab.inverse(), Word::from_pairs([(B, -1), (A, -1)]));
        assert!(Word::gen(A).concat(&Word::power(A, -1)).is_empty());
        assert_eq!(ab.inverse().inverse(), ab);
        assert_eq!(ab.pow(2), Word::from_pairs([(A, 1), (B, 1), (A, 1), (B, 1)]));
        assert_eq!(ab.pow(-1), ab.inverse());
        assert!(ab.pow(0).is_empty());
    }

    #[test]
    fn cyclic_reduction_and_relator_equivalence() {
        let w = Word::from_pairs([(A, 2), (B, 1), (A, -1)]);
        assert_eq!(w.cyclic_reduce(), Word::from_pairs([(A, 1), (B, 1)]));
        let r = Word::from_pairs([(B, -1), (A, 1), (B, 1), (A, -1)]);
        let s = Word::from_pairs([(B, 1), (A, 1), (B, -1), (A, -1)]);
        assert!(r.same_relator(&s));
        assert!(!r.same_relator(&Word::from_pairs([(A, 1), (B, 2)])));
        assert!(Word::empty().same_relator(&Word::from_pairs([(A, 1), (A, -1)])));
    }

    #[test]
    fn substitution() {
        let w = Word::from_pairs([(A, 2), (B, -1)]);
        let s = w.substitute(|g| if g == A { Word::gen(B) } else { Word::power(A, 3) });
        assert_eq!(s, Word::from_pairs([(B, 2), (A, -3)]));
    }
}
