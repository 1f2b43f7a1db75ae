//! Letters and freely reduced words over a finite alphabet of generators.
//!
//! A letter is a generator index together with an orientation. Words are
//! always stored freely reduced, so two equal `Word` values denote the same
//! element of the free group on the alphabet.

use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse.
///
/// The derived ordering puts `a < A < b < B < ...`, which is the letter order
/// used for shortlex comparisons throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub const fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub const fn inverse(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// +1 or -1.
    pub const fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Dense index in `0..2 * rank`, used for transition tables.
    pub const fn slot(self) -> usize {
        2 * self.generator + self.inverse as usize
    }

    pub const fn from_slot(slot: usize) -> Self {
        Letter::new(slot / 2, slot % 2 == 1)
    }

    /// All letters of an alphabet of `rank` generators in shortlex order.
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> {
        (0..2 * rank).map(Letter::from_slot)
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    /// Freely reduces a raw letter sequence, rejecting generators `>= rank`.
    pub fn reduce<I>(raw: I, rank: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut w = Word::identity();
        for l in raw {
            if l.generator >= rank {
                return Err(Error::InvalidGenerator {
                    index: l.generator,
                    rank,
                });
            }
            w.push(l);
        }
        Ok(w)
    }

    /// Reduces without an alphabet check. Only for letters already known to
    /// be valid.
    pub(crate) fn reduce_unchecked<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut w = Word::identity();
        for l in raw {
            w.push(l);
        }
        w
    }

    /// Appends a letter, cancelling against the last one if possible.
    pub fn push(&mut self, l: Letter) {
        match self.letters.last() {
            Some(&last) if last.cancels(l) => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn times(&self, l: Letter) -> Word {
        let mut out = self.clone();
        out.push(l);
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, plus one. Zero for the identity.
    pub fn support_rank(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.generator + 1)
            .max()
            .unwrap_or(0)
    }

    /// Letters with generator in `range`, re-indexed to start at zero. The
    /// result is reduced again since removing letters can expose
    /// cancellations.
    pub(crate) fn restrict(&self, range: std::ops::Range<usize>) -> Word {
        Word::reduce_unchecked(
            self.letters
                .iter()
                .filter(|l| range.contains(&l.generator))
                .map(|l| Letter::new(l.generator - range.start, l.inverse)),
        )
    }

    /// Shifts every generator index by `offset`.
    pub(crate) fn shifted(&self, offset: usize) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(l.generator + offset, l.inverse))
                .collect(),
        }
    }

    /// Renders with the given generator names; uppercase marks an inverse.
    pub fn render(&self, names: &Alphabet) -> String {
        let parts: Vec<String> = self.letters.iter().map(|&l| names.name(l)).collect();
        parts.join(" ")
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word::reduce_unchecked(iter)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Alphabet::Latin))
    }
}

/// Generator naming scheme.
///
/// `Latin` names generators `a, b, c, ...`. `Coordinate` names the first
/// four `x, y, z, w` and also accepts `a, b, c, d` on input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Latin,
    Coordinate,
}

const COORDINATE_NAMES: [char; 4] = ['x', 'y', 'z', 'w'];

impl Alphabet {
    pub fn name(&self, l: Letter) -> String {
        let base = match self {
            Alphabet::Coordinate if l.generator < COORDINATE_NAMES.len() => {
                Some(COORDINATE_NAMES[l.generator])
            }
            _ if l.generator < 26 => Some((b'a' + l.generator as u8) as char),
            _ => None,
        };
        match (base, l.inverse) {
            (Some(c), false) => c.to_string(),
            (Some(c), true) => c.to_ascii_uppercase().to_string(),
            (None, false) => format!("g{}", l.generator),
            (None, true) => format!("G{}", l.generator),
        }
    }

    fn index_of(&self, c: char) -> Option<usize> {
        let lower = c.to_ascii_lowercase();
        if let Alphabet::Coordinate = self {
            if let Some(i) = COORDINATE_NAMES.iter().position(|&n| n == lower) {
                return Some(i);
            }
        }
        lower
            .is_ascii_lowercase()
            .then(|| (lower as u8 - b'a') as usize)
    }

    /// Parses a word such as `"a b A"` or `"abA"`. Whitespace is ignored.
    pub fn parse(&self, text: &str, rank: usize) -> Result<Word> {
        let mut raw = Vec::new();
        for c in text.chars().filter(|c| !c.is_whitespace()) {
            let invalid = || Error::InvalidLetter {
                letter: c,
                word: text.to_string(),
            };
            if !c.is_ascii_alphabetic() {
                return Err(invalid());
            }
            let index = self.index_of(c).ok_or_else(invalid)?;
            if index >= rank {
                return Err(invalid());
            }
            raw.push(Letter::new(index, c.is_ascii_uppercase()));
        }
        Word::reduce(raw, rank)
    }
}

/// Freely reduces a raw letter sequence over an alphabet of `rank`
/// generators.
pub fn free_reduce(raw: &[Letter], rank: usize) -> Result<Word> {
    Word::reduce(raw.iter().copied(), rank)
}
