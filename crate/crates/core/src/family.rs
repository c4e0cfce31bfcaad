//! Families of words and their intersection properties.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::word::{agree, Alphabet, Word};

/// A set of distinct words of a common length over a common alphabet.
///
/// Members are kept sorted lexicographically; iteration follows that order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    alphabet: Alphabet,
    m: usize,
    members: Vec<Word>,
}

impl Family {
    /// Builds a family, rejecting duplicates and words of the wrong shape.
    pub fn new(
        alphabet: Alphabet,
        m: usize,
        words: impl IntoIterator<Item = Word>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(invalid("word length must be at least 1"));
        }
        let mut members: Vec<Word> = words.into_iter().collect();
        for w in &members {
            if w.alphabet() != alphabet || w.len() != m {
                return Err(invalid(format!(
                    "word {w} does not belong to q={}, m={m}",
                    alphabet.q()
                )));
            }
        }
        members.sort_unstable();
        if let Some(pair) = members.windows(2).find(|p| p[0] == p[1]) {
            return Err(invalid(format!("duplicate word {}", pair[0])));
        }
        Ok(Family {
            alphabet,
            m,
            members,
        })
    }

    pub fn empty(alphabet: Alphabet, m: usize) -> Result<Self> {
        Family::new(alphabet, m, [])
    }

    /// Convenience constructor from digit strings.
    ///
    /// ```
    /// use ekr_words::Family;
    /// let f = Family::from_strs(2, 3, &["110", "000", "011", "101"]).unwrap();
    /// assert_eq!(f.to_string(), "{000,011,101,110}");
    /// ```
    pub fn from_strs(q: u8, m: usize, words: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(q)?;
        let words = words
            .iter()
            .map(|s| Word::parse(q, s))
            .collect::<Result<Vec<_>>>()?;
        Family::new(alphabet, m, words)
    }

    /// Builds from members already sorted and distinct.
    pub(crate) fn from_sorted_unchecked(alphabet: Alphabet, m: usize, members: Vec<Word>) -> Self {
        debug_assert!(members.windows(2).all(|p| p[0] < p[1]));
        Family {
            alphabet,
            m,
            members,
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
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.members.iter()
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.binary_search(w).is_ok()
    }

    /// Members as digit strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.members.iter().map(Word::to_string).collect()
    }

    /// Writes the family in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.q(), self.m);
        for w in &self.members {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the text format: a `q m` header, one word per line, `#` comments.
    ///
    /// Letters are single decimal digits, so `q` is limited to 10.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing \"q m\" header".into(),
        })?;
        let perr = |line, message: String| Error::Parse { line, message };
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [q, m] = fields[..] else {
            return Err(perr(hline, format!("expected \"q m\", got {header:?}")));
        };
        let q: u8 = q
            .parse()
            .map_err(|_| perr(hline, format!("bad alphabet size {q:?}")))?;
        let m: usize = m
            .parse()
            .map_err(|_| perr(hline, format!("bad word length {m:?}")))?;
        if !(2..=10).contains(&q) {
            return Err(perr(
                hline,
                format!("alphabet size must be in 2..=10, got {q}"),
            ));
        }
        if m == 0 {
            return Err(perr(hline, "word length must be at least 1".into()));
        }
        let alphabet = Alphabet::new(q)?;

        let mut words = Vec::new();
        for (line, s) in lines {
            if s.len() != m || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(perr(
                    line,
                    format!("expected {m} decimal digits, got {s:?}"),
                ));
            }
            let word = Word::parse(q, s).map_err(|e| perr(line, e.to_string()))?;
            words.push((line, word));
        }
        words.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        if let Some(p) = words.windows(2).find(|p| p[0].1 == p[1].1) {
            return Err(perr(p[1].0, format!("duplicate word {}", p[1].1)));
        }
        Ok(Family::from_sorted_unchecked(
            alphabet,
            m,
            words.into_iter().map(|(_, w)| w).collect(),
        ))
    }

    /// True iff every pair of members intersects.
    pub fn is_intersecting(&self) -> bool {
        self.first_disjoint_pair().is_none()
    }

    /// First non-intersecting pair in lexicographic order.
    pub fn first_disjoint_pair(&self) -> Option<(&Word, &Word)> {
        let ms = &self.members;
        (0..ms.len())
            .flat_map(|i| (i + 1..ms.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !agree(&ms[i], &ms[j]))
            .map(|(i, j)| (&ms[i], &ms[j]))
    }

    /// True iff every `min(r, |F|)` members share a common coordinate.
    ///
    /// Families smaller than `r` must have a coordinate common to all members.
    pub fn is_r_wise_intersecting(&self, r: usize) -> Result<bool> {
        Ok(self.r_wise_violation(r)?.is_none())
    }

    /// The lexicographically first subset of size `min(r, |F|)` without a
    /// common coordinate.
    pub fn r_wise_violation(&self, r: usize) -> Result<Option<Vec<Word>>> {
        if r < 2 {
            return Err(invalid(format!(
                "intersection order must be at least 2, got {r}"
            )));
        }
        let need = r.min(self.len());
        if need < 2 {
            return Ok(None);
        }
        let alive: Vec<usize> = (0..self.m).collect();
        let mut picked = Vec::with_capacity(need);
        Ok(self
            .violation_from(0, need, &alive, &mut picked)
            .map(|idx| idx.into_iter().map(|i| self.members[i].clone()).collect()))
    }

    // Depth-first over combinations in lexicographic order; `alive` holds the
    // coordinates where every picked word agrees with the first picked word.
    fn violation_from(
        &self,
        start: usize,
        need: usize,
        alive: &[usize],
        picked: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if picked.len() == need {
            return None;
        }
        let remaining = need - picked.len();
        for i in start..=self.len() - remaining {
            let w = &self.members[i];
            let next: Vec<usize> = match picked.first() {
                None => alive.to_vec(),
                Some(&f) => {
                    let first = &self.members[f];
                    alive
                        .iter()
                        .copied()
                        .filter(|&j| first.letters()[j] == w.letters()[j])
                        .collect()
                }
            };
            picked.push(i);
            if next.is_empty() {
                // Lexicographically smallest completion of this prefix.
                let mut out = picked.clone();
                out.extend(i + 1..i + remaining);
                return Some(out);
            }
            let first = &self.members[picked[0]];
            let tail = &self.members[i + 1..];
            let stuck = next.iter().any(|&j| {
                let l = first.letters()[j];
                tail.iter().all(|x| x.letters()[j] == l)
            });
            // a coordinate every later candidate keeps can never be broken
            if !stuck {
                if let Some(v) = self.violation_from(i + 1, need, &next, picked) {
                    return Some(v);
                }
            }
            picked.pop();
        }
        None
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::parse_text(s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(q={}, m={}, {self})", self.q(), self.m)
    }
}
