use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::word::{universe_cap, Word};

/// What a slice selects on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    /// Words starting with this prefix (possibly empty).
    Prefix(Vec<u8>),
    /// Words with this first letter.
    FirstLetter(u8),
}

impl Selector {
    fn width(&self) -> usize {
        match self {
            Selector::Prefix(p) => p.len(),
            Selector::FirstLetter(_) => 1,
        }
    }
}

/// A sub-family cut out by a [`Selector`], with its suffix projection.
#[derive(Debug, Clone)]
pub struct SliceView<'a> {
    parent: &'a Family,
    selector: Selector,
    selected: Family,
    projected: Option<Family>,
}

impl<'a> SliceView<'a> {
    fn build(parent: &'a Family, selector: Selector) -> Result<Self> {
        let prefix: Vec<u8> = match &selector {
            Selector::Prefix(p) => p.clone(),
            Selector::FirstLetter(i) => vec![*i],
        };
        let k = prefix.len();
        let words: Vec<Word> = parent
            .iter()
            .filter(|w| w.letters()[..k] == prefix[..])
            .cloned()
            .collect();
        // suffixes of a fixed-prefix run stay sorted and distinct
        let projected = (k < parent.m()).then(|| {
            Family::from_sorted_unchecked(
                parent.alphabet(),
                parent.m() - k,
                words.iter().filter_map(|w| w.suffix(k)).collect(),
            )
        });
        let selected = Family::from_sorted_unchecked(parent.alphabet(), parent.m(), words);
        Ok(SliceView {
            parent,
            selector,
            selected,
            projected,
        })
    }

    pub fn parent(&self) -> &Family {
        self.parent
    }

    pub fn selector(&self) -> &Selector {
        &self.selector
    }

    /// Members of the parent matching the selector.
    pub fn selected(&self) -> &Family {
        &self.selected
    }

    /// The selected words with the selector coordinates removed; `None`
    /// when the prefix covers the whole word.
    pub fn projected(&self) -> Option<&Family> {
        self.projected.as_ref()
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    /// Number of coordinates consumed by the selector.
    pub fn width(&self) -> usize {
        self.selector.width()
    }
}

fn check_prefix(family: &Family, prefix: &[u8]) -> Result<()> {
    if prefix.len() > family.m() {
        return Err(invalid(format!(
            "prefix of length {} longer than m={}",
            prefix.len(),
            family.m()
        )));
    }
    if let Some(&l) = prefix.iter().find(|&&l| l >= family.q()) {
        return Err(invalid(format!(
            "prefix letter {l} out of range for q={}",
            family.q()
        )));
    }
    Ok(())
}

/// The slice of words beginning with `prefix`. An empty prefix selects everything.
///
/// ```
/// use ekr_words::{star, StarSpec, partitions::prefix_slice};
/// let s = star(2, 3, StarSpec { position: 3, letter: 0 }).unwrap();
/// let view = prefix_slice(&s, &[0]).unwrap();
/// assert_eq!(view.selected().to_string(), "{000,010}");
/// assert_eq!(view.projected().unwrap().to_string(), "{00,10}");
/// ```
pub fn prefix_slice<'a>(family: &'a Family, prefix: &[u8]) -> Result<SliceView<'a>> {
    check_prefix(family, prefix)?;
    SliceView::build(family, Selector::Prefix(prefix.to_vec()))
}

/// `|T_δ|` for every prefix `δ` of length `k`, in lexicographic order of `δ`
/// with empty slices included.
pub fn prefix_counts(family: &Family, k: usize) -> Result<Vec<(Vec<u8>, usize)>> {
    if k > family.m() {
        return Err(invalid(format!(
            "prefix length {k} exceeds m={}",
            family.m()
        )));
    }
    let q = family.q() as u64;
    let cap = universe_cap();
    let total = q
        .checked_pow(k as u32)
        .filter(|&n| n <= cap)
        .ok_or(Error::UniverseTooLarge { q, m: k, cap })?;
    let mut counts = vec![0usize; total as usize];
    for w in family {
        let idx = w.letters()[..k]
            .iter()
            .fold(0u64, |acc, &l| acc * q + l as u64);
        counts[idx as usize] += 1;
    }
    let alphabet = family.alphabet();
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, n)| {
            let prefix = if k == 0 {
                Vec::new()
            } else {
                Word::from_index(alphabet, k, i as u64).letters().to_vec()
            };
            (prefix, n)
        })
        .collect())
}

/// The `q` first-letter slices `T_0, …, T_{q-1}` with their projections.
pub fn letter_slices(family: &Family) -> Result<Vec<SliceView<'_>>> {
    if family.m() < 2 {
        return Err(invalid("first-letter slices need m >= 2"));
    }
    (0..family.q())
        .map(|i| SliceView::build(family, Selector::FirstLetter(i)))
        .collect()
}
