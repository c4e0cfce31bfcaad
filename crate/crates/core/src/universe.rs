//! Index-based view of `Z_q^m` used by the partitions and the search.
//!
//! Word `i` is the `i`-th word in lexicographic order. Agreement between two
//! words is a bitmask over coordinates (bit `j` = coordinate `j + 1`), which
//! fits in a `u32` because the universe cap forces `m <= 20`.

use crate::error::Result;
use crate::family::Family;
use crate::word::{universe_size, Alphabet, Word};

#[derive(Debug, Clone)]
pub(crate) struct Universe {
    pub alphabet: Alphabet,
    pub m: usize,
    pub size: usize,
    letters: Vec<u8>,
}

impl Universe {
    pub fn new(q: u8, m: usize) -> Result<Self> {
        let alphabet = Alphabet::new(q)?;
        let size = universe_size(q, m)? as usize;
        let mut letters = Vec::with_capacity(size * m);
        for i in 0..size {
            letters.extend_from_slice(Word::from_index(alphabet, m, i as u64).letters());
        }
        Ok(Universe {
            alphabet,
            m,
            size,
            letters,
        })
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.alphabet.q()
    }

    #[inline]
    pub fn letters(&self, i: u32) -> &[u8] {
        let i = i as usize;
        &self.letters[i * self.m..(i + 1) * self.m]
    }

    pub fn word(&self, i: u32) -> Word {
        Word::from_index(self.alphabet, self.m, i as u64)
    }

    #[inline]
    pub fn agree_mask(&self, a: u32, b: u32) -> u32 {
        self.letters(a)
            .iter()
            .zip(self.letters(b))
            .enumerate()
            .fold(
                0,
                |acc, (j, (x, y))| if x == y { acc | (1 << j) } else { acc },
            )
    }

    /// Index of `i + c·1`.
    pub fn shift(&self, i: u32, c: u8) -> u32 {
        let q = self.q() as u32;
        self.letters(i)
            .iter()
            .fold(0, |acc, &l| acc * q + (l as u32 + c as u32) % q)
    }

    /// Canonical diagonal cosets: bases with first letter 0 in lexicographic
    /// order, members listed by shift `c = 0..q`.
    pub fn cells(&self) -> Vec<Vec<u32>> {
        let per_letter = (self.size / self.q() as usize) as u32;
        (0..per_letter)
            .map(|base| (0..self.q()).map(|c| self.shift(base, c)).collect())
            .collect()
    }

    /// Cell number of every word, matching [`Universe::cells`].
    pub fn cell_ids(&self) -> Vec<u32> {
        let mut ids = vec![0u32; self.size];
        for (k, cell) in self.cells().iter().enumerate() {
            for &w in cell {
                ids[w as usize] = k as u32;
            }
        }
        ids
    }

    pub fn family(&self, mut indices: Vec<u32>) -> Family {
        indices.sort_unstable();
        Family::from_sorted_unchecked(
            self.alphabet,
            self.m,
            indices.into_iter().map(|i| self.word(i)).collect(),
        )
    }
}

/// Fixed-size bitset over word indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitSet {
    blocks: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for i in 0..len {
            s.insert(i as u32);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: u32) {
        self.blocks[i as usize / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.blocks[i as usize / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn and_from(&mut self, a: &BitSet, b: &BitSet) {
        for ((dst, x), y) in self.blocks.iter_mut().zip(&a.blocks).zip(&b.blocks) {
            *dst = x & y;
        }
    }
}

/// Per-word neighbourhoods in the intersection graph.
pub(crate) fn neighbourhoods(u: &Universe) -> Vec<BitSet> {
    (0..u.size as u32)
        .map(|a| {
            let mut s = BitSet::new(u.size);
            for b in 0..u.size as u32 {
                if u.agree_mask(a, b) != 0 {
                    s.insert(b);
                }
            }
            s
        })
        .collect()
}
