//! Alphabets and words over `Z_q`.

use std::fmt;

use crate::error::{invalid, Error, Result};

/// Hard ceiling on `q^m` for anything that materializes the whole word space.
pub const UNIVERSE_CAP: u64 = 1 << 20;

/// Environment variable that may lower (never raise) [`UNIVERSE_CAP`].
pub const UNIVERSE_ENV: &str = "EKR_MAX_UNIVERSE";

/// The effective universe cap: [`UNIVERSE_CAP`], lowered by `EKR_MAX_UNIVERSE` when set.
pub fn universe_cap() -> u64 {
    std::env::var(UNIVERSE_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .map_or(UNIVERSE_CAP, |v| v.min(UNIVERSE_CAP))
}

/// `q^m` if it fits under the universe cap.
pub fn universe_size(q: u8, m: usize) -> Result<u64> {
    let cap = universe_cap();
    let too_large = || Error::UniverseTooLarge {
        q: q as u64,
        m,
        cap,
    };
    let exp = u32::try_from(m).map_err(|_| too_large())?;
    match (q as u64).checked_pow(exp) {
        Some(n) if n <= cap => Ok(n),
        _ => Err(too_large()),
    }
}

/// A finite alphabet identified with the residues `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet(u8);

impl Alphabet {
    pub fn new(q: u8) -> Result<Self> {
        if q < 2 {
            return Err(invalid(format!(
                "alphabet size must be at least 2, got {q}"
            )));
        }
        Ok(Alphabet(q))
    }

    #[inline]
    pub fn q(self) -> u8 {
        self.0
    }
}

/// A word of length `m >= 1` over `Z_q`.
///
/// Ordering is lexicographic with coordinate 1 most significant, which is also
/// the order of [`Word::index`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Box<[u8]>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: impl Into<Box<[u8]>>) -> Result<Self> {
        let letters = letters.into();
        if letters.is_empty() {
            return Err(invalid("words must have length at least 1"));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l >= alphabet.q()) {
            return Err(invalid(format!(
                "letter {bad} out of range for q={}",
                alphabet.q()
            )));
        }
        Ok(Word { alphabet, letters })
    }

    /// Parses a digit string, leftmost digit = coordinate 1.
    pub fn parse(q: u8, digits: &str) -> Result<Self> {
        let alphabet = Alphabet::new(q)?;
        let letters = digits
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| invalid(format!("'{c}' is not a letter")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(alphabet, letters)
    }

    /// Inverse of [`Word::index`].
    pub fn from_index(alphabet: Alphabet, m: usize, mut index: u64) -> Self {
        let q = alphabet.q() as u64;
        let mut letters = vec![0u8; m];
        for slot in letters.iter_mut().rev() {
            *slot = (index % q) as u8;
            index /= q;
        }
        Word {
            alphabet,
            letters: letters.into(),
        }
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.alphabet.q()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false; words have length at least 1.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Letter at a 1-based coordinate.
    #[inline]
    pub fn at(&self, position: usize) -> u8 {
        self.letters[position - 1]
    }

    /// Lexicographic rank among all `q^m` words.
    pub fn index(&self) -> u64 {
        let q = self.q() as u64;
        self.letters.iter().fold(0, |acc, &l| acc * q + l as u64)
    }

    /// `self + c·1`, coordinatewise mod q.
    pub fn shifted(&self, c: u8) -> Word {
        let q = self.q() as u16;
        let letters = self
            .letters
            .iter()
            .map(|&l| ((l as u16 + c as u16) % q) as u8)
            .collect::<Vec<_>>();
        Word {
            alphabet: self.alphabet,
            letters: letters.into(),
        }
    }

    /// `self - c·1`, coordinatewise mod q.
    pub fn unshifted(&self, c: u8) -> Word {
        let c = c % self.q();
        self.shifted(self.q() - c)
    }

    /// Removes the first `k` coordinates. `None` when nothing would remain.
    pub fn suffix(&self, k: usize) -> Option<Word> {
        (k < self.len()).then(|| Word {
            alphabet: self.alphabet,
            letters: self.letters[k..].into(),
        })
    }

    /// Prepends letters to the front of the word.
    pub fn with_prefix(&self, prefix: &[u8]) -> Result<Word> {
        let mut letters = prefix.to_vec();
        letters.extend_from_slice(&self.letters);
        Word::new(self.alphabet, letters)
    }

    /// Bitwise complement; only meaningful for q = 2.
    pub fn complement(&self) -> Word {
        self.shifted(1)
    }

    fn check_compatible(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet || self.len() != other.len() {
            return Err(invalid(format!(
                "word {self} (q={}, m={}) is incompatible with {other} (q={}, m={})",
                self.q(),
                self.len(),
                other.q(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in self.letters.iter() {
            let c = char::from_digit(l as u32, 36).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// True iff the two words agree in at least one coordinate.
pub fn intersects(x: &Word, y: &Word) -> Result<bool> {
    x.check_compatible(y)?;
    Ok(agree(x, y))
}

/// Unchecked variant for callers that already know the words are compatible.
#[inline]
pub(crate) fn agree(x: &Word, y: &Word) -> bool {
    x.letters.iter().zip(y.letters.iter()).any(|(a, b)| a == b)
}

/// The smallest 1-based coordinate at which all words agree.
pub fn common_position(words: &[Word]) -> Result<Option<usize>> {
    let (first, rest) = words
        .split_first()
        .ok_or_else(|| invalid("common_position needs at least one word"))?;
    for w in rest {
        first.check_compatible(w)?;
    }
    Ok((1..=first.len()).find(|&j| rest.iter().all(|w| w.at(j) == first.at(j))))
}
