//! Free-group words over a 1-based generator alphabet.
//!
//! A [`Letter`] is a nonzero signed generator index: `3` is `x3`, `-3` is
//! `x3^-1`. Words are plain values; every combinator returns a freshly
//! reduced word, so words can be hashed and compared as search states.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter 0 is not a generator (letters are nonzero signed indices)")]
    ZeroLetter,
    #[error("letter {letter} is outside an alphabet of {size} generators")]
    OutsideAlphabet { letter: i32, size: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
}

/// A generator of an alphabet, with its 1-based index and display name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: u32,
    pub name: String,
}

/// Signed generator occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: u32, sign: i8) -> Self {
        assert!(generator > 0, "generator indices are 1-based");
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        Letter(generator as i32 * sign as i32)
    }

    pub fn from_signed(value: i32) -> Result<Self, WordError> {
        if value == 0 {
            Err(WordError::ZeroLetter)
        } else {
            Ok(Letter(value))
        }
    }

    pub fn pos(generator: u32) -> Self {
        Letter::new(generator, 1)
    }

    pub fn neg(generator: u32) -> Self {
        Letter::new(generator, -1)
    }

    #[inline]
    pub fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    #[inline]
    pub fn sign(self) -> i8 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    #[inline]
    pub fn signed(self) -> i32 {
        self.0
    }
}

/// Ordered list of generator names; position `i` is generator `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, WordError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(WordError::DuplicateName(name.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// `x1, ..., xn`.
    pub fn indexed(n: usize) -> Self {
        Alphabet {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.names.iter().enumerate().map(|(i, name)| Generator {
            index: i as u32 + 1,
            name: name.clone(),
        })
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u32 + 1)
    }

    pub fn name(&self, index: u32) -> Option<&str> {
        self.names
            .get(index.checked_sub(1)? as usize)
            .map(String::as_str)
    }

    pub fn check(&self, word: &Word) -> Result<(), WordError> {
        match word
            .letters()
            .iter()
            .find(|l| l.generator() as usize > self.len())
        {
            Some(l) => Err(WordError::OutsideAlphabet {
                letter: l.signed(),
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    /// Renders a word with this alphabet's names, e.g. `x2 x1 x2^-1`.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.letters()
            .iter()
            .map(|l| {
                let name = self
                    .name(l.generator())
                    .map(str::to_string)
                    .unwrap_or_else(|| format!("#{}", l.generator()));
                if l.sign() > 0 {
                    name
                } else {
                    format!("{name}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A word in the free group. `reduced` records whether the letter sequence
/// is known to contain no cancelling adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
    reduced: bool,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
            reduced: true,
        }
    }

    /// Wraps a letter sequence as given, without reducing it.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        let reduced = is_freely_reduced(&letters);
        Word { letters, reduced }
    }

    /// Builds and freely reduces a word from signed indices.
    pub fn from_signed(values: &[i32]) -> Result<Self, WordError> {
        let letters = values
            .iter()
            .map(|&v| Letter::from_signed(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word::from_letters(letters).free_reduce())
    }

    /// Reduced `g^k` (`k` may be negative).
    pub fn power(generator: u32, k: i64) -> Self {
        let sign = if k >= 0 { 1 } else { -1 };
        Word {
            letters: vec![Letter::new(generator, sign); k.unsigned_abs() as usize],
            reduced: true,
        }
    }

    pub fn generator(generator: u32) -> Self {
        Word::power(generator, 1)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn to_signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn max_generator(&self) -> u32 {
        self.letters
            .iter()
            .map(|l| l.generator())
            .max()
            .unwrap_or(0)
    }

    pub fn free_reduce(&self) -> Word {
        if self.reduced {
            return self.clone();
        }
        Word {
            letters: reduce_letters(self.letters.iter().copied()),
            reduced: true,
        }
    }

    pub fn inverse(&self) -> Word {
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Word::from_letters(letters).free_reduce()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word {
            letters: reduce_letters(self.letters.iter().chain(other.letters.iter()).copied()),
            reduced: true,
        }
    }

    /// `u · self · u^-1`, reduced. This is `self^u` in the exponent notation.
    pub fn conjugate(&self, u: &Word) -> Word {
        u.concat(self).concat(&u.inverse())
    }

    /// `a · b · a^-1 · b^-1`, reduced.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    pub fn exponent_sum(&self, generator: u32) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator() == generator)
            .map(|l| l.sign() as i64)
            .sum()
    }

    /// Splits a word as `conjugator · core · conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let w = self.free_reduce();
        let letters = w.letters;
        let mut lo = 0;
        let mut hi = letters.len();
        while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        let core = Word {
            letters: letters[lo..hi].to_vec(),
            reduced: true,
        };
        let conjugator = Word {
            letters: letters[..lo].to_vec(),
            reduced: true,
        };
        (core, conjugator)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.reduced
            && (self.letters.len() < 2
                || self.letters[0] != self.letters[self.letters.len() - 1].inverse())
    }

    /// Left rotation by `k` letters (no reduction performed).
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word::from_letters(letters)
    }

    /// True if the two words are conjugate in the free group.
    pub fn is_cyclic_conjugate(&self, other: &Word) -> bool {
        let (a, _) = self.cyclically_reduce();
        let (b, _) = other.cyclically_reduce();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..a.len()).any(|k| a.rotate(k).letters == b.letters)
    }
}

fn is_freely_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|p| p[0] != p[1].inverse())
}

fn reduce_letters(letters: impl Iterator<Item = Letter>) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

/// Splices `insert` into a reduced letter slice at `position` and reduces.
/// The reduction only has to look at the two junctions.
pub fn splice_reduce(word: &[Letter], position: usize, insert: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len() + insert.len());
    out.extend_from_slice(&word[..position]);
    for &l in insert.iter().chain(word[position..].iter()) {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.sign() > 0 {
                write!(f, "x{}", l.generator())?;
            } else {
                write!(f, "x{}^-1", l.generator())?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.letters.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<i32>::deserialize(deserializer)?;
        let letters = raw
            .into_iter()
            .map(Letter::from_signed)
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Word::from_letters(letters))
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.names.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(deserializer)?;
        Alphabet::new(names).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i32]) -> Word {
        Word::from_signed(v).unwrap()
    }

    fn raw(v: &[i32]) -> Word {
        Word::from_letters(v.iter().map(|&x| Letter::from_signed(x).unwrap()).collect())
    }

    #[test]
    fn cancellation() {
        assert!(raw(&[1, -1]).free_reduce().is_empty());
        assert_eq!(raw(&[2, 1, -1, 2]).free_reduce(), w(&[2, 2]));
        assert!(!raw(&[2, 1, -1, 2]).is_reduced());
    }

    #[test]
    fn commutator_expansion_is_reduced() {
        let expanded = raw(&[2, 1, -2, 1, 2, -1, -2, -1]);
        assert!(expanded.is_reduced());
        assert_eq!(expanded.free_reduce().len(), 8);
        let x1 = Word::generator(1);
        let c = Word::commutator(&x1.conjugate(&Word::generator(2)), &x1);
        assert_eq!(c, expanded);
    }

    #[test]
    fn combinators() {
        let x1 = Word::generator(1);
        let x2 = Word::generator(2);
        assert!(Word::commutator(&x1, &x1).is_empty());
        assert_eq!(x1.conjugate(&x2), w(&[2, 1, -2]));
        assert_eq!(w(&[2, 1]).inverse(), w(&[-1, -2]));
        assert_eq!(w(&[3, 1]).conjugate(&Word::empty()), w(&[3, 1]));
    }

    #[test]
    fn exponent_sums() {
        // t = 3, v t-free
        let v = w(&[1, 2, -1]);
        let word = Word::generator(3)
            .concat(&v)
            .concat(&Word::power(3, -1))
            .concat(&Word::power(1, -1))
            .concat(&v.inverse());
        assert_eq!(word.exponent_sum(3), 0);
        assert_eq!(Word::empty().exponent_sum(1), 0);
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w(&[1, 2, -1]).cyclically_reduce(), (w(&[2]), w(&[1])));
        assert_eq!(w(&[1, 2]).cyclically_reduce(), (w(&[1, 2]), Word::empty()));
        assert_eq!(
            w(&[-1, 2, 2, 1]).cyclically_reduce(),
            (w(&[2, 2]), w(&[-1]))
        );
    }

    #[test]
    fn cyclic_conjugacy() {
        assert!(w(&[1, 2, -1, -2]).is_cyclic_conjugate(&w(&[-1, -2, 1, 2])));
        assert!(w(&[3, 1, 2, -3]).is_cyclic_conjugate(&w(&[2, 1])));
        assert!(!w(&[1, 2]).is_cyclic_conjugate(&w(&[2, 2])));
    }

    #[test]
    fn alphabet_checks() {
        let a = Alphabet::new(["x1", "x2", "t"]).unwrap();
        assert_eq!(a.index_of("t"), Some(3));
        assert!(a.check(&w(&[3, -1])).is_ok());
        assert_eq!(
            a.check(&w(&[4])),
            Err(WordError::OutsideAlphabet { letter: 4, size: 3 })
        );
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert_eq!(a.render(&w(&[3, -1])), "t x1^-1");
        assert!(Alphabet::new(Vec::<String>::new()).unwrap().is_empty());
    }

    #[test]
    fn json_encoding() {
        let word = w(&[2, 1, -2, -1]);
        assert_eq!(serde_json::to_string(&word).unwrap(), "[2,1,-2,-1]");
        let back: Word = serde_json::from_str("[2,1,-2,-1]").unwrap();
        assert_eq!(back, word);
        assert!(serde_json::from_str::<Word>("[1,0]").is_err());
    }

    #[test]
    fn splice_matches_concat() {
        let base = w(&[1, 2, -1, 2]);
        let ins = [
            Letter::from_signed(-2).unwrap(),
            Letter::from_signed(1).unwrap(),
        ];
        let spliced = splice_reduce(base.letters(), 3, &ins);
        let expected = raw(&[1, 2, -1, -2, 1, 2]).free_reduce();
        assert_eq!(spliced, expected.letters());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..24).prop_map(|v| raw(&v))
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(a in arb_word()) {
            let r = a.free_reduce();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert!(r.len() <= a.len());
            prop_assert_eq!(r.len() % 2, a.len() % 2);
        }

        #[test]
        fn concat_is_associative(a in arb_word(), b in arb_word(), c in arb_word()) {
            prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
        }

        #[test]
        fn exponent_sum_is_additive(a in arb_word(), b in arb_word(), g in 1u32..=3) {
            prop_assert_eq!(a.concat(&b).exponent_sum(g), a.exponent_sum(g) + b.exponent_sum(g));
            prop_assert_eq!(a.free_reduce().exponent_sum(g), a.exponent_sum(g));
        }

        #[test]
        fn inverse_is_involution(a in arb_word()) {
            prop_assert_eq!(a.inverse().inverse(), a.free_reduce());
            prop_assert!(a.concat(&a.inverse()).is_empty());
        }

        #[test]
        fn cyclic_reduction_recovers_word(a in arb_word()) {
            let (core, conj) = a.cyclically_reduce();
            prop_assert!(core.is_cyclically_reduced());
            prop_assert_eq!(core.conjugate(&conj), a.free_reduce());
        }
    }
}
