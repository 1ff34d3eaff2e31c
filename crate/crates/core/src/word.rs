//! Letters, words, and the reduced-word normal form.

use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::error::WordError;
use crate::family::{GroupFamily, Value};

/// A typed group element: `value ∈ H_type_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    type_index: u32,
    value: Value,
}

impl Letter {
    /// # Panics
    /// If `type_index` is 0.
    pub fn new(type_index: u32, value: Value) -> Self {
        assert!(type_index >= 1, "letter type indices start at 1");
        Letter { type_index, value }
    }

    pub fn type_index(&self) -> u32 {
        self.type_index
    }

    pub fn value(&self) -> Value {
        self.value
    }

    pub fn inverse(&self, family: &dyn GroupFamily) -> Letter {
        Letter {
            type_index: self.type_index,
            value: family.invert(self.type_index, self.value),
        }
    }

    pub fn is_identity(&self, family: &dyn GroupFamily) -> bool {
        family.is_identity(self.type_index, self.value)
    }
}

/// A finite, possibly unreduced, sequence of letters.
///
/// Equality is literal: same length, same types, same values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
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

    /// Largest type index present, 0 for the empty word.
    pub fn max_type(&self) -> u32 {
        self.0.iter().map(Letter::type_index).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Deletes every letter of type `> m`; no reduction.
    pub fn kappa(&self, m: u32) -> Word {
        Word(
            self.0
                .iter()
                .copied()
                .filter(|l| l.type_index <= m)
                .collect(),
        )
    }

    pub fn count_type(&self, type_index: u32) -> usize {
        self.0.iter().filter(|l| l.type_index == type_index).count()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

/// A word with no identity letters and no two adjacent letters of the same
/// type: the normal form of an element of the free product.
///
/// Only obtainable through [`crate::reduce`] or the validating constructor,
/// so the invariants always hold.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedWord(Word);

impl ReducedWord {
    pub fn empty() -> Self {
        ReducedWord(Word::empty())
    }

    /// Validates `word` against the normal-form invariants.
    pub fn try_new(family: &dyn GroupFamily, word: Word) -> Result<Self, WordError> {
        check_reduced(family, &word)?;
        Ok(ReducedWord(word))
    }

    /// Caller guarantees `word` is reduced.
    pub(crate) fn new_unchecked(word: Word) -> Self {
        debug_assert!(word
            .windows(2)
            .all(|pair| pair[0].type_index != pair[1].type_index));
        ReducedWord(word)
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.letters().first().copied()
    }
}

impl Deref for ReducedWord {
    type Target = Word;

    fn deref(&self) -> &Word {
        &self.0
    }
}

impl AsRef<Word> for ReducedWord {
    fn as_ref(&self) -> &Word {
        &self.0
    }
}

/// Checks the reduced-word characterization: no identity letters and no two
/// consecutive letters of the same type.
pub fn check_reduced(family: &dyn GroupFamily, word: &Word) -> Result<(), WordError> {
    for (index, letter) in word.iter().enumerate() {
        if letter.type_index == 0 {
            return Err(WordError::ZeroTypeIndex { index });
        }
        if letter.is_identity(family) {
            return Err(WordError::IdentityLetter {
                index,
                type_index: letter.type_index,
            });
        }
    }
    for (index, pair) in word.windows(2).enumerate() {
        if pair[0].type_index == pair[1].type_index {
            return Err(WordError::AdjacentSameType {
                index,
                type_index: pair[0].type_index,
            });
        }
    }
    Ok(())
}

pub fn is_reduced(family: &dyn GroupFamily, word: &Word) -> bool {
    check_reduced(family, word).is_ok()
}

impl fmt::Display for Word {
    /// Family-agnostic rendering (plain integer exponents). Use
    /// [`crate::format_word`] for family-aware output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.value == 1 {
                write!(f, "a{}", l.type_index)?;
            } else {
                write!(f, "a{}^{}", l.type_index, l.value)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
