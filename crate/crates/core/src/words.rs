//! Free-group words over the generators `x_1, x_2, ...`.
//!
//! A [`Word`] is a finite sequence of signed letters. It stands for the
//! homotopy class of a based loop in the Hawaiian earring that is supported on
//! finitely many circles. Free equality is always phrased as equality after
//! [`Word::reduce`]; `==` on words is literal sequence equality.
//!
//! ```
//! use earring::words::Word;
//!
//! let w: Word = "1 2 -2 -1 3".parse().unwrap();
//! assert_eq!(w.reduce().to_string(), "3");
//! assert_eq!(w.concat(&w.invert()).reduce(), Word::empty());
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Orientation of a letter. `Plus` is a counterclockwise traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A generator `x_gen` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: u32,
    sign: Sign,
}

impl Letter {
    /// Panics if `gen == 0`; there is no circle `X_0`.
    pub fn new(gen: u32, sign: Sign) -> Letter {
        assert!(gen >= 1, "generator index must be at least 1");
        Letter { gen, sign }
    }

    /// `x_gen`.
    pub fn x(gen: u32) -> Letter {
        Letter::new(gen, Sign::Plus)
    }

    /// `x_gen^{-1}`.
    pub fn x_inv(gen: u32) -> Letter {
        Letter::new(gen, Sign::Minus)
    }

    /// Interprets `±n` as `x_n^{±1}`. Returns `None` for zero or for indices
    /// that do not fit a `u32`.
    pub fn from_signed(value: i64) -> Option<Letter> {
        let gen = u32::try_from(value.unsigned_abs()).ok()?;
        if gen == 0 {
            return None;
        }
        let sign = if value > 0 { Sign::Plus } else { Sign::Minus };
        Some(Letter { gen, sign })
    }

    pub fn gen(self) -> u32 {
        self.gen
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn to_signed(self) -> i64 {
        self.sign.as_i64() * i64::from(self.gen)
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }

    /// True when `self` followed by `other` freely cancels.
    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}

/// A finite word in the free group on `x_1, x_2, ...`.
///
/// The `reduced` flag is a cached fact, not part of the value: two words are
/// equal when their letter sequences are equal.
#[derive(Debug, Clone, Default)]
pub struct Word {
    letters: Vec<Letter>,
    reduced: bool,
}

impl PartialEq for Word {
    fn eq(&self, other: &Word) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl Word {
    /// The identity (the class of the constant loop).
    pub fn empty() -> Word {
        Word {
            letters: Vec::new(),
            reduced: true,
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        let reduced = letters.is_empty();
        Word { letters, reduced }
    }

    /// Builds a word from signed integers. Panics on a zero entry; use
    /// [`str::parse`] for untrusted input.
    pub fn from_signed(values: &[i64]) -> Word {
        Word::from_letters(
            values
                .iter()
                .map(|&v| Letter::from_signed(v).expect("letters are nonzero"))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Whether this value is known to be in normal form. A `false` flag does
    /// not mean the word has a cancelling pair, only that nobody checked.
    pub fn is_flagged_reduced(&self) -> bool {
        self.reduced
    }

    /// True when no adjacent pair cancels.
    pub fn is_reduced(&self) -> bool {
        self.reduced || self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    /// Largest generator index occurring in the word, 0 for the empty word.
    pub fn max_gen(&self) -> u32 {
        self.letters.iter().map(|l| l.gen).max().unwrap_or(0)
    }

    /// Free reduction by a single left-to-right stack scan.
    pub fn reduce(&self) -> Word {
        if self.reduced {
            return self.clone();
        }
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word {
            letters: stack,
            reduced: true,
        }
    }

    /// Letters of `self` followed by letters of `other`, unreduced.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word::from_letters(letters)
    }

    /// Reversed word with every sign flipped. Preserves reducedness.
    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            reduced: self.reduced,
        }
    }

    /// `self` repeated `times` times, unreduced.
    pub fn pow(&self, times: usize) -> Word {
        Word::from_letters(self.letters.repeat(times))
    }

    /// Erases every letter with generator index above `level`, which is what
    /// the retraction of the earring onto the first `level` circles does to a
    /// loop. The result is not reduced.
    pub fn delete_above(&self, level: u32) -> Word {
        Word::from_letters(
            self.letters
                .iter()
                .copied()
                .filter(|l| l.gen <= level)
                .collect(),
        )
    }

    /// Number of occurrences of `x_gen` and `x_gen^{-1}`.
    pub fn count_gen(&self, gen: u32) -> usize {
        self.letters.iter().filter(|l| l.gen == gen).count()
    }

    /// Free equality: `self` and `other` reduce to the same word.
    pub fn freely_equal(&self, other: &Word) -> bool {
        self.concat(&other.invert()).reduce().is_empty()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Word {
        Word::from_letters(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word::from_letters(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Parses one nonzero signed integer token of a word literal.
pub(crate) fn parse_letter(token: &str, position: usize) -> Result<Letter> {
    let value: i64 = token.parse().map_err(|_| Error::Parse {
        position,
        token: token.to_string(),
        reason: "expected a nonzero integer".to_string(),
    })?;
    Letter::from_signed(value).ok_or_else(|| Error::Parse {
        position,
        token: token.to_string(),
        reason: if value == 0 {
            "zero is not a generator".to_string()
        } else {
            "generator index out of range".to_string()
        },
    })
}

impl FromStr for Word {
    type Err = Error;

    /// Whitespace-separated nonzero integers; `e` alone is the empty word.
    fn from_str(text: &str) -> Result<Word> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse {
                position: 0,
                token: String::new(),
                reason: "empty literal; write \"e\" for the identity".to_string(),
            });
        }
        if tokens == ["e"] {
            return Ok(Word::empty());
        }
        tokens
            .iter()
            .enumerate()
            .map(|(i, tok)| parse_letter(tok, i + 1))
            .collect()
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(values: &[i64]) -> Word {
        Word::from_signed(values)
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w(&[1, -1]).reduce(), Word::empty());
        assert_eq!(w(&[1, 2, -2, -1, 3]).reduce(), w(&[3]));
        assert_eq!(w(&[2, 2, -2, -2]).pow(4).reduce(), Word::empty());
        assert!(w(&[1, -1]).reduce().is_flagged_reduced());
    }

    #[test]
    fn concat_examples() {
        let c = w(&[1, 2]).concat(&w(&[-2, 3]));
        assert_eq!(c, w(&[1, 2, -2, 3]));
        assert!(!c.is_flagged_reduced());
        assert_eq!(c.reduce(), w(&[1, 3]));
        assert_eq!(Word::empty().concat(&w(&[5])), w(&[5]));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w(&[1, 2]).invert(), w(&[-2, -1]));
        assert_eq!(Word::empty().invert(), Word::empty());
    }

    #[test]
    fn delete_above_examples() {
        assert_eq!(w(&[1, 3, 2]).delete_above(2), w(&[1, 2]));
        assert_eq!(w(&[1, 3, 2]).delete_above(0), Word::empty());
        let w23 = w(&[1, 3, -1, -3]).pow(2);
        assert_eq!(w23.delete_above(1), w(&[1, -1, 1, -1]));
    }

    #[test]
    fn count_gen_examples() {
        assert_eq!(w(&[1, 2, -1, -2]).pow(2).count_gen(1), 4);
        assert_eq!(Word::empty().count_gen(7), 0);
        assert_eq!(w(&[3, 5, -3, -5]).pow(8).count_gen(3), 16);
    }

    #[test]
    fn equality_ignores_flag() {
        let a = w(&[1, 2]);
        let b = w(&[1, 2]).reduce();
        assert!(b.is_flagged_reduced());
        assert!(!a.is_flagged_reduced());
        assert_eq!(a, b);
    }

    #[test]
    fn parse_and_print() {
        let word: Word = "1 5 -1 -5".parse().unwrap();
        assert_eq!(word, w(&[1, 5, -1, -5]));
        assert_eq!(word.to_string(), "1 5 -1 -5");
        assert_eq!("e".parse::<Word>().unwrap(), Word::empty());
        assert_eq!(Word::empty().to_string(), "e");
        match "1 0 2".parse::<Word>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!("1 x".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
        assert!("e 1".parse::<Word>().is_err());
    }

    #[test]
    fn serde_as_literal() {
        let word = w(&[2, -3]);
        let json = serde_json::to_string(&word).unwrap();
        assert_eq!(json, "\"2 -3\"");
        let back: Word = serde_json::from_str(&json).unwrap();
        assert_eq!(back, word);
    }

    #[test]
    #[should_panic]
    fn zero_generator_panics() {
        Letter::new(0, Sign::Plus);
    }
}
