use crate::error::{invalid, Result};
use crate::family::Family;
use crate::word::{universe_size, Alphabet, Word};

/// A diagonal coset `{δ, δ+1, …, δ+(q-1)·1}` under coordinatewise addition
/// of constant vectors.
///
/// Any two members differ in every coordinate, so an intersecting family
/// meets each cell at most once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetCell {
    base: Word,
    members: Vec<Word>,
}

impl CosetCell {
    fn from_base(base: Word) -> Self {
        debug_assert_eq!(base.letters()[0], 0);
        let members = (0..base.q()).map(|c| base.shifted(c)).collect();
        CosetCell { base, members }
    }

    /// The representative with first letter 0.
    pub fn base(&self) -> &Word {
        &self.base
    }

    /// Members in shift order: `members()[c] = base + c·1`.
    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.shift_of(w).is_some()
    }

    /// The `c` with `w = base + c·1`.
    pub fn shift_of(&self, w: &Word) -> Option<u8> {
        self.members.iter().position(|m| m == w).map(|c| c as u8)
    }

    /// How many members of `family` fall in this cell.
    pub fn occupancy(&self, family: &Family) -> usize {
        self.members.iter().filter(|w| family.contains(w)).count()
    }
}

/// The `q^(n-1)` canonical cells partitioning `Z_q^n`, ordered by base.
///
/// ```
/// use ekr_words::partitions::coset_cells;
/// let cells = coset_cells(3, 2).unwrap();
/// let last: Vec<String> = cells[2].members().iter().map(|w| w.to_string()).collect();
/// assert_eq!(last, ["02", "10", "21"]);
/// ```
pub fn coset_cells(q: u8, n: usize) -> Result<Vec<CosetCell>> {
    let alphabet = Alphabet::new(q)?;
    if n == 0 {
        return Err(invalid("word length must be at least 1"));
    }
    let bases = universe_size(q, n)? / q as u64;
    Ok((0..bases)
        .map(|i| CosetCell::from_base(Word::from_index(alphabet, n, i)))
        .collect())
}

/// The canonical cell containing `w`; its base is `w - w_1·1`.
pub fn cell_of(w: &Word) -> CosetCell {
    CosetCell::from_base(w.unshifted(w.letters()[0]))
}

/// `S(δ)` for an arbitrary base, listed as `δ, δ+1, …, δ+(q-1)·1`.
pub fn diagonal_coset(delta: &Word) -> Vec<Word> {
    (0..delta.q()).map(|c| delta.shifted(c)).collect()
}
