use std::fmt;

use crate::error::{Error, Result};

const RESERVED: &[char] = &['|', '*', '+', '?', '(', ')', '%', '.', '^'];

/// Ordered finite set of single ASCII letters.
///
/// Letters are kept sorted, so two alphabets declared with the same letters in
/// a different order are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
    index: [u8; 128],
}

const NONE: u8 = u8::MAX;

impl Alphabet {
    pub fn new(letters: &str) -> Result<Self> {
        Self::from_letters(letters.chars())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut letters: Vec<char> = letters.into_iter().collect();
        letters.sort_unstable();
        letters.dedup();
        if letters.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        if letters.len() >= NONE as usize {
            return Err(Error::InvalidAlphabet("too many letters".into()));
        }
        let mut index = [NONE; 128];
        for (i, &c) in letters.iter().enumerate() {
            if !c.is_ascii_graphic() || RESERVED.contains(&c) {
                return Err(Error::InvalidAlphabet(format!("'{}' cannot be used as a letter", c.escape_default())));
            }
            index[c as usize] = i as u8;
        }
        Ok(Alphabet { letters, index })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, index: usize) -> char {
        self.letters[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        if c.is_ascii() {
            match self.index[c as usize] {
                NONE => None,
                i => Some(i as usize),
            }
        } else {
            None
        }
    }

    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    /// Letter indices of `word`, failing on the first letter outside the alphabet.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars().map(|c| self.index_of(c).ok_or(Error::UnknownLetter(c))).collect()
    }

    pub fn as_string(&self) -> String {
        self.letters.iter().collect()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.as_string())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}
