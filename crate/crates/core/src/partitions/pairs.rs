use crate::error::{invalid, Result};
use crate::family::Family;
use crate::word::{universe_size, Alphabet, Word};

/// A binary word and its complement; `low` is the one starting with 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplementaryPair {
    pub low: Word,
    pub high: Word,
}

impl ComplementaryPair {
    pub fn contains(&self, w: &Word) -> bool {
        *w == self.low || *w == self.high
    }
}

/// The `2^(m-1)` complementary pairs partitioning `{0,1}^m`, ordered by `low`.
pub fn complementary_pairs(m: usize) -> Result<Vec<ComplementaryPair>> {
    if m == 0 {
        return Err(invalid("word length must be at least 1"));
    }
    let alphabet = Alphabet::new(2)?;
    let pairs = universe_size(2, m)? / 2;
    Ok((0..pairs)
        .map(|i| {
            let low = Word::from_index(alphabet, m, i);
            let high = low.complement();
            ComplementaryPair { low, high }
        })
        .collect())
}

/// Pair number of a binary word (the index of its `low` word).
fn pair_index(w: &Word) -> u64 {
    if w.letters()[0] == 0 {
        w.index()
    } else {
        w.complement().index()
    }
}

/// Builds the family holding exactly one word from each complementary pair.
///
/// Such a family is always intersecting: two binary words fail to intersect
/// only when one is the complement of the other.
pub fn family_from_selection(m: usize, choices: &[Word]) -> Result<Family> {
    let alphabet = Alphabet::new(2)?;
    let pairs = universe_size(2, m)? / 2;
    if choices.len() as u64 != pairs {
        return Err(invalid(format!(
            "expected {pairs} choices (one per pair), got {}",
            choices.len()
        )));
    }
    let mut hit = vec![false; pairs as usize];
    for w in choices {
        if w.alphabet() != alphabet || w.len() != m {
            return Err(invalid(format!("{w} is not a binary word of length {m}")));
        }
        let p = pair_index(w) as usize;
        if std::mem::replace(&mut hit[p], true) {
            return Err(invalid(format!("pair of {w} chosen twice")));
        }
    }
    Family::new(alphabet, m, choices.iter().cloned())
}

/// The selection whose bit `i` picks `high` (1) or `low` (0) in pair `i`.
pub fn selection_family(m: usize, bits: u64) -> Result<Family> {
    let pairs = complementary_pairs(m)?;
    if pairs.len() < 64 && bits >> pairs.len() != 0 {
        return Err(invalid(format!(
            "selection {bits:#x} has bits beyond {} pairs",
            pairs.len()
        )));
    }
    let choices: Vec<Word> = pairs
        .into_iter()
        .enumerate()
        .map(|(i, p)| if bits >> i & 1 == 1 { p.high } else { p.low })
        .collect();
    family_from_selection(m, &choices)
}

/// Recovers the per-pair choices (in pair order) from a family that hits
/// every complementary pair exactly once.
pub fn selection_from_family(family: &Family) -> Result<Vec<Word>> {
    if family.q() != 2 {
        return Err(invalid("complementary pairs need a binary family"));
    }
    let pairs = universe_size(2, family.m())? / 2;
    let mut chosen: Vec<Option<Word>> = vec![None; pairs as usize];
    for w in family {
        let slot = &mut chosen[pair_index(w) as usize];
        if let Some(prev) = slot {
            return Err(invalid(format!("{prev} and {w} come from the same pair")));
        }
        *slot = Some(w.clone());
    }
    chosen
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| invalid(format!("pair {i} has no chosen word"))))
        .collect()
}
