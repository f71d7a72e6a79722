use std::cmp::Ordering;
use std::fmt;

use crate::error::{NcError, Result};

/// An element of the free monoid on `d` letters.
///
/// Letters are stored as `u8` (at most [`MAX_ARITY`](crate::MAX_ARITY) variables); the
/// arity itself lives on the containers (polynomials, Fock spaces) that hold words.
/// Words are ordered graded-lexicographically: first by length, then letter by letter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn new(letters: Vec<u8>, d: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= d) {
            return Err(NcError::LetterOutOfRange {
                letter: bad as usize,
                d,
            });
        }
        Ok(Self { letters })
    }

    pub fn from_usize(letters: &[usize], d: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= d) {
            return Err(NcError::LetterOutOfRange { letter: bad, d });
        }
        Ok(Self {
            letters: letters.iter().map(|&l| l as u8).collect(),
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letter(i: usize) -> Self {
        Self {
            letters: vec![i as u8],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn reversed(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Position among the `d^len` words of the same length (first letter most significant).
    pub fn index_in_degree(&self, d: usize) -> usize {
        self.letters
            .iter()
            .fold(0usize, |acc, &l| acc * d + l as usize)
    }

    /// Position in the graded-lex enumeration of all words.
    pub fn graded_index(&self, d: usize) -> usize {
        match self.len() {
            0 => 0,
            len => basis_dim(d, len - 1) + self.index_in_degree(d),
        }
    }

    pub fn from_index(mut index: usize, len: usize, d: usize) -> Word {
        let mut letters = vec![0u8; len];
        for slot in letters.iter_mut().rev() {
            *slot = (index % d) as u8;
            index /= d;
        }
        Word { letters }
    }

    /// All words of length `len`, in lexicographic order.
    pub fn all_of_length(len: usize, d: usize) -> impl Iterator<Item = Word> {
        let count = d.pow(len as u32);
        (0..count).map(move |i| Word::from_index(i, len, d))
    }

    /// All words of length at most `max_len`, in graded-lex order.
    pub fn all_up_to(max_len: usize, d: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(move |len| Word::all_of_length(len, d))
    }
}

/// `Σ_{k=0}^{n} d^k`, the number of words of length at most `n`.
pub fn basis_dim(d: usize, n: usize) -> usize {
    (0..=n).map(|k| d.pow(k as u32)).sum()
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        for l in &self.letters {
            write!(f, "z{}", l + 1)?;
        }
        Ok(())
    }
}
