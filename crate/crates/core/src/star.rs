//! Stars: the families fixing one letter at one coordinate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::word::{universe_cap, universe_size, Alphabet, Word};

/// A star is named by a 1-based coordinate and the letter fixed there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StarSpec {
    pub position: usize,
    pub letter: u8,
}

impl StarSpec {
    pub fn new(q: u8, m: usize, position: usize, letter: u8) -> Result<Self> {
        if !(1..=m).contains(&position) {
            return Err(invalid(format!("position {position} outside 1..={m}")));
        }
        if letter >= q {
            return Err(invalid(format!("letter {letter} outside 0..{q}")));
        }
        Ok(StarSpec { position, letter })
    }

    /// All `q·m` specs, ordered by position then letter.
    pub fn all(q: u8, m: usize) -> impl Iterator<Item = StarSpec> {
        (1..=m).flat_map(move |position| (0..q).map(move |letter| StarSpec { position, letter }))
    }
}

impl fmt::Display for StarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pos{}:{}", self.position, self.letter)
    }
}

/// The star of all `q^(m-1)` words carrying `spec.letter` at `spec.position`.
///
/// ```
/// use ekr_words::{star, StarSpec};
/// let s = star(3, 2, StarSpec::new(3, 2, 2, 1).unwrap()).unwrap();
/// assert_eq!(s.to_string(), "{01,11,21}");
/// ```
pub fn star(q: u8, m: usize, spec: StarSpec) -> Result<Family> {
    let alphabet = Alphabet::new(q)?;
    let spec = StarSpec::new(q, m, spec.position, spec.letter)?;
    universe_size(q, m)?;
    let rest = max_bound(q, m)?;
    let members = (0..rest)
        .map(|i| {
            let tail = Word::from_index(alphabet, m, i);
            let mut letters = tail.letters()[1..].to_vec();
            letters.insert(spec.position - 1, spec.letter);
            Word::new(alphabet, letters)
        })
        .collect::<Result<Vec<_>>>()?;
    // inserting a fixed letter preserves lexicographic order
    Ok(Family::from_sorted_unchecked(alphabet, m, members))
}

/// The star spec `F` equals exactly, if any (smallest position wins).
pub fn classify_star(family: &Family) -> Option<StarSpec> {
    let m = family.m();
    let expected = (family.q() as u64).checked_pow((m - 1) as u32)?;
    if family.len() as u64 != expected {
        return None;
    }
    let first = family.iter().next()?;
    // |F| = q^(m-1) words all sharing a coordinate are exactly that star
    (1..=m)
        .find(|&j| family.iter().all(|w| w.at(j) == first.at(j)))
        .map(|position| StarSpec {
            position,
            letter: first.at(position),
        })
}

/// Number of stars in `Z_q^m`.
pub fn count_stars(q: u8, m: usize) -> u64 {
    q as u64 * m as u64
}

/// The coset bound `q^(m-1)` on intersecting families.
pub fn max_bound(q: u8, m: usize) -> Result<u64> {
    Alphabet::new(q)?;
    if m == 0 {
        return Err(invalid("word length must be at least 1"));
    }
    let n = universe_size(q, m)?;
    n.checked_div(q as u64)
        .ok_or_else(|| Error::UniverseTooLarge {
            q: q as u64,
            m,
            cap: universe_cap(),
        })
}
