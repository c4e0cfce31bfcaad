//! Slice-level checks: the binary prefix-count law, the per-coset dichotomy
//! for `q >= 3`, the double count, and the binary endgame.

use serde::{Deserialize, Serialize};

use super::report::CheckReport;
use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::partitions::{diagonal_coset, letter_slices, prefix_counts};
use crate::word::{universe_size, Word};

fn digits(letters: &[u8]) -> String {
    if letters.is_empty() {
        return "()".into();
    }
    letters
        .iter()
        .map(|l| char::from_digit(*l as u32, 36).unwrap_or('?'))
        .collect()
}

/// Traces the binary prefix-count law `|T_δ| = 2^(m-k-1)` for every
/// `0 <= k <= m-1` and every `δ` in `{0,1}^k`, stopping at the first
/// violation.
///
/// Within a level, an empty slice is reported before any other miscount.
/// This is a diagnostic: the law holds for stars fixing the last coordinate
/// and fails for stars fixing an earlier one.
pub fn claim1_check(family: &Family) -> Result<CheckReport> {
    if family.q() != 2 {
        return Err(Error::Precondition(
            "the prefix-count law is stated for q = 2".into(),
        ));
    }
    let m = family.m();
    let mut report = CheckReport::new("claim1-prefix-counts");
    for k in 0..m {
        let expected = 1usize << (m - k - 1);
        let counts = prefix_counts(family, k)?;
        report.metric("levels_checked", k as u64 + 1);
        // empty slices first, mirroring the order of the inductive step
        let violation = counts
            .iter()
            .find(|(_, n)| *n == 0)
            .or_else(|| counts.iter().find(|(_, n)| *n != expected));
        if let Some((delta, n)) = violation {
            report.violate(format!(
                "k={k} delta={} count={n} expected={expected}",
                digits(delta)
            ));
            report.metric("violation_k", k as u64);
            return Ok(report);
        }
        let row: Vec<String> = counts.iter().map(|(_, n)| n.to_string()).collect();
        report.confirm(format!("k={k}: {}", row.join(",")));
    }
    Ok(report)
}

/// How one coset `S(δ)` of suffixes meets the first-letter projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim2Class {
    /// The counts sum to less than `q`.
    Deficient,
    /// `S(δ)` lies inside the projection of exactly one first letter.
    UniqueContainment { letter: u8 },
    /// Every projection meets `S(δ)` in the same single word `δ + k·1`.
    CommonSingleton { shift: u8 },
    /// Sum `>= q` without either equality shape; impossible for
    /// intersecting families.
    Unclassified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim2Case {
    pub delta: Word,
    /// `|T̃_i ∩ S(δ)|` for each first letter `i`.
    pub counts: Vec<usize>,
    pub sum: usize,
    pub class: Claim2Class,
}

fn check_claim2_shape(family: &Family) -> Result<()> {
    if family.q() < 3 {
        return Err(Error::Precondition(
            "the coset dichotomy needs q >= 3".into(),
        ));
    }
    if family.m() < 2 {
        return Err(Error::Precondition(
            "the coset dichotomy needs m >= 2".into(),
        ));
    }
    Ok(())
}

fn projections(family: &Family) -> Result<Vec<Family>> {
    Ok(letter_slices(family)?
        .iter()
        .map(|s| s.projected().expect("m >= 2 leaves a suffix").clone())
        .collect())
}

fn classify(delta: &Word, projections: &[Family]) -> Claim2Case {
    let q = delta.q() as usize;
    let coset = diagonal_coset(delta);
    let hits: Vec<Vec<u8>> = projections
        .iter()
        .map(|p| {
            (0..q as u8)
                .filter(|&c| p.contains(&coset[c as usize]))
                .collect()
        })
        .collect();
    let counts: Vec<usize> = hits.iter().map(Vec::len).collect();
    let sum = counts.iter().sum();
    let class = if sum < q {
        Claim2Class::Deficient
    } else if sum > q {
        Claim2Class::Unclassified
    } else if let Some(i) = counts.iter().position(|&n| n == q) {
        Claim2Class::UniqueContainment { letter: i as u8 }
    } else if hits.iter().all(|h| h.len() == 1 && h[0] == hits[0][0]) {
        Claim2Class::CommonSingleton { shift: hits[0][0] }
    } else {
        Claim2Class::Unclassified
    };
    Claim2Case {
        delta: delta.clone(),
        counts,
        sum,
        class,
    }
}

/// Computes `|T̃_i ∩ S(δ)|` for every first letter `i` and classifies the
/// coset by the equality cases of `Σ_i |T̃_i ∩ S(δ)| <= q`.
pub fn claim2_analyze(family: &Family, delta: &Word) -> Result<Claim2Case> {
    check_claim2_shape(family)?;
    if delta.alphabet() != family.alphabet() || delta.len() != family.m() - 1 {
        return Err(invalid(format!(
            "delta {delta} must be a word of length {} over q={}",
            family.m() - 1,
            family.q()
        )));
    }
    Ok(classify(delta, &projections(family)?))
}

/// Runs [`claim2_analyze`] for every `δ` in `Z_q^(m-1)` and requires the
/// coset sum to equal `q` with one of the two equality shapes.
pub fn claim2_check(family: &Family) -> Result<CheckReport> {
    check_claim2_shape(family)?;
    let projections = projections(family)?;
    let n = universe_size(family.q(), family.m() - 1)?;
    let mut report = CheckReport::new("claim2-dichotomy");
    let (mut unique, mut common) = (0u64, 0u64);
    for i in 0..n {
        let delta = Word::from_index(family.alphabet(), family.m() - 1, i);
        let case = classify(&delta, &projections);
        match case.class {
            Claim2Class::UniqueContainment { .. } if case.sum == family.q() as usize => unique += 1,
            Claim2Class::CommonSingleton { .. } if case.sum == family.q() as usize => common += 1,
            _ => {
                if report.passed() {
                    report.violate(format!(
                        "delta={} counts={:?} sum={} class={:?}",
                        case.delta, case.counts, case.sum, case.class
                    ));
                }
            }
        }
    }
    report.metric("deltas", n);
    report.metric("unique_containment", unique);
    report.metric("common_singleton", common);
    Ok(report)
}

/// Two nonzero residues summing to `j` mod `q`: `j = 1 + (j-1)` for
/// `j != 1`, and `1 = 2 + (q-1)`.
pub fn nonzero_split(j: u8, q: u8) -> Result<(u8, u8)> {
    if q < 3 {
        return Err(Error::Precondition(
            "two nonzero summands need q >= 3".into(),
        ));
    }
    if j >= q {
        return Err(invalid(format!("{j} is not a residue mod {q}")));
    }
    Ok(if j == 1 {
        (2, q - 1)
    } else {
        (1, (j + q - 1) % q)
    })
}

/// `v, v'` with all coordinates nonzero and `u = δ + v + v'`.
pub fn nonzero_vector_split(u: &Word, delta: &Word) -> Result<(Word, Word)> {
    if u.alphabet() != delta.alphabet() || u.len() != delta.len() {
        return Err(invalid(format!("{u} and {delta} have different shapes")));
    }
    let q = u.q();
    let (mut v, mut w) = (Vec::with_capacity(u.len()), Vec::with_capacity(u.len()));
    for (&a, &d) in u.letters().iter().zip(delta.letters()) {
        let (x, y) = nonzero_split((a + q - d) % q, q)?;
        v.push(x);
        w.push(y);
    }
    Ok((Word::new(u.alphabet(), v)?, Word::new(u.alphabet(), w)?))
}

/// Counts triples `(δ, j, w)` with `w ∈ T̃_j ∩ S(δ)` by summing over every
/// `δ` in `Z_q^(m-1)`, and compares the total with `q·|F|`. The metric
/// `equals_q_pow_m` records whether it also equals `q^m`.
pub fn double_count_check(family: &Family) -> Result<CheckReport> {
    if family.m() < 2 {
        return Err(Error::Precondition("the double count needs m >= 2".into()));
    }
    let q = family.q() as u64;
    let projections = projections(family)?;
    let n = universe_size(family.q(), family.m() - 1)?;
    let mut total = 0u64;
    for i in 0..n {
        let delta = Word::from_index(family.alphabet(), family.m() - 1, i);
        for w in diagonal_coset(&delta) {
            total += projections.iter().filter(|p| p.contains(&w)).count() as u64;
        }
    }
    let expected = q * family.len() as u64;
    let q_pow_m = n * q;
    let mut report = CheckReport::new("double-count");
    if total == expected {
        report.confirm(format!("double sum {total} = q|T|"));
    } else {
        report.violate(format!("double sum {total} != q|T| = {expected}"));
    }
    report.metric("double_sum", total);
    report.metric("q_times_size", expected);
    report.metric("q_pow_m", q_pow_m);
    report.metric("equals_q_pow_m", (total == q_pow_m) as u64);
    Ok(report)
}

/// The binary endgame: words with prefixes `0^(m-1)` and `1^(m-1)` agree at
/// most in the last coordinate, so they must share their last letter `u`;
/// once such a pair exists, every member must end in `u`.
pub fn endgame_check(family: &Family) -> Result<CheckReport> {
    if family.q() != 2 || family.m() < 2 {
        return Err(Error::Precondition(
            "the endgame needs q = 2 and m >= 2".into(),
        ));
    }
    let m = family.m();
    let prefixed = |b: u8| -> Vec<&Word> {
        family
            .iter()
            .filter(|w| w.letters()[..m - 1].iter().all(|&l| l == b))
            .collect()
    };
    let (zeros, ones) = (prefixed(0), prefixed(1));
    let mut report = CheckReport::new("endgame");
    let mut pairs = 0u64;
    for x in &zeros {
        for y in &ones {
            pairs += 1;
            let u = x.at(m);
            if y.at(m) != u {
                report.violate(format!("{x} and {y} do not intersect"));
                continue;
            }
            match family.iter().find(|z| z.at(m) != u) {
                Some(z) => report.violate(format!("{x}, {y}, {z} share no coordinate")),
                None => report.confirm(format!("{x}, {y} force last letter {u}")),
            }
        }
    }
    report.metric("pairs", pairs);
    Ok(report)
}
