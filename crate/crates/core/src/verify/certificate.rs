//! Exhaustive certificates for the bound, the binary census and the two
//! star theorems.
//!
//! A certificate document is pretty-printed JSON with a fixed field order,
//! followed by a line `sha256 <hex>` hashing the JSON text.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::claims::{claim2_check, double_count_check, endgame_check};
use super::lemma::check_lemma_bound;
use super::report::CheckReport;
use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::partitions::selection_family;
use crate::search::{self, feasibility_table, feasible, max_family_size, SearchResult, SearchSpec};
use crate::star::{classify_star, count_stars, max_bound};

pub const SCHEMA_VERSION: u32 = 1;

/// Certificates list their families only up to this many.
pub const FAMILY_LIST_LIMIT: u64 = 4096;

const HASH_PREFIX: &str = "sha256 ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// Maximum intersecting families are stars (`q >= 3`).
    #[serde(rename = "thm2")]
    Stars,
    /// Maximum 3-wise intersecting binary families are stars.
    #[serde(rename = "thm3")]
    BinaryThreeWise,
    /// There are `2^(2^(m-1))` maximum intersecting binary families.
    #[serde(rename = "count-q2")]
    BinaryCount,
    /// Intersecting families have at most `q^(m-1)` members, attained.
    #[serde(rename = "lemma1")]
    Bound,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::Stars => "thm2",
            Theorem::BinaryThreeWise => "thm3",
            Theorem::BinaryCount => "count-q2",
            Theorem::Bound => "lemma1",
        }
    }

    /// Intersection order of the families the certificate enumerates.
    pub fn order(self) -> usize {
        match self {
            Theorem::BinaryThreeWise => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm2" => Ok(Theorem::Stars),
            "thm3" => Ok(Theorem::BinaryThreeWise),
            "count-q2" => Ok(Theorem::BinaryCount),
            "lemma1" => Ok(Theorem::Bound),
            _ => Err(invalid(format!(
                "unknown theorem {s:?} (thm2, thm3, count-q2, lemma1)"
            ))),
        }
    }
}

/// A check aggregated over every family it ran on. Metrics are summed.
/// Metrics kept as a maximum over families; all others are totals.
const PEAK_METRICS: &[&str] = &["bound", "cells", "max_occupancy", "q_pow_m"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: bool,
    pub families_checked: u64,
    pub first_violation: Option<String>,
    pub metrics: BTreeMap<String, u64>,
}

impl CheckSummary {
    fn new(name: &str) -> Self {
        CheckSummary {
            name: name.into(),
            passed: true,
            families_checked: 0,
            first_violation: None,
            metrics: BTreeMap::new(),
        }
    }

    fn absorb(&mut self, family_no: usize, report: &CheckReport) {
        self.families_checked += 1;
        for (k, v) in &report.metrics {
            let slot = self.metrics.entry(k.clone()).or_default();
            if PEAK_METRICS.contains(&k.as_str()) {
                *slot = (*slot).max(*v);
            } else {
                *slot += v;
            }
        }
        if let Some(w) = report.first_violation() {
            if self.passed {
                self.first_violation = Some(format!("family #{family_no}: {}", w.detail));
            }
            self.passed = false;
        }
    }

    fn from_report(report: &CheckReport, families_checked: u64) -> Self {
        let mut s = CheckSummary::new(&report.name);
        s.absorb(0, report);
        s.families_checked = families_checked;
        if let Some(w) = report.first_violation() {
            s.first_violation = Some(w.detail.clone());
        }
        s
    }
}

/// Field order is part of the document format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub theorem: Theorem,
    pub q: u8,
    pub m: usize,
    pub bound: u64,
    pub extremal_size: u64,
    pub num_extremal_families: u64,
    pub num_stars_expected: u64,
    pub all_stars: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<Vec<String>>>,
    /// Set instead of `families` when there are too many to list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub families_sha256: Option<String>,
    pub checks: Vec<CheckSummary>,
    pub elapsed_ms: u64,
}

/// What re-reading a certificate's family list reproduces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Revalidation {
    pub count: u64,
    pub all_stars: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertOptions {
    pub workers: usize,
    pub limits: search::Limits,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions {
            workers: 1,
            limits: search::Limits::default(),
        }
    }
}

fn families_hash(families: &[Family]) -> String {
    let mut h = Sha256::new();
    for f in families {
        h.update(f.to_strings().join(","));
        h.update(";");
    }
    hex::encode(h.finalize())
}

impl Certificate {
    /// True iff every recorded check passed, i.e. the certificate asserts
    /// its theorem's conclusion at `(q, m)`.
    pub fn conclusion_holds(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The JSON body followed by its `sha256` line.
    pub fn to_document(&self) -> String {
        let body = serde_json::to_string_pretty(self).expect("certificate serializes");
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        format!("{body}\n{HASH_PREFIX}{digest}\n")
    }

    /// Parses a document and verifies its hash line.
    pub fn from_document(text: &str) -> Result<Self> {
        let text = text.strip_suffix('\n').unwrap_or(text);
        let (body, hash_line) = text
            .rsplit_once('\n')
            .ok_or_else(|| Error::Certificate("missing hash line".into()))?;
        let recorded = hash_line
            .strip_prefix(HASH_PREFIX)
            .ok_or_else(|| Error::Certificate(format!("bad hash line {hash_line:?}")))?;
        let actual = hex::encode(Sha256::digest(body.as_bytes()));
        if recorded != actual {
            return Err(Error::Certificate(format!(
                "hash mismatch: recorded {recorded}, computed {actual}"
            )));
        }
        serde_json::from_str(body).map_err(|e| Error::Certificate(e.to_string()))
    }

    /// Rebuilds every listed family and recomputes the count and star
    /// classification; fails if they disagree with the recorded fields.
    pub fn revalidate(&self) -> Result<Revalidation> {
        let lists = self.families.as_ref().ok_or_else(|| {
            Error::Certificate("family list elided; only its hash is recorded".into())
        })?;
        let mut all_stars = true;
        for words in lists {
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            let f = Family::from_strs(self.q, self.m, &refs)?;
            if f.len() as u64 != self.extremal_size && self.theorem != Theorem::Bound {
                return Err(Error::Certificate(format!("{f} has size {}", f.len())));
            }
            if !f.is_r_wise_intersecting(self.theorem.order())? {
                return Err(Error::Certificate(format!(
                    "{f} is not {}-wise intersecting",
                    self.theorem.order()
                )));
            }
            all_stars &= classify_star(&f).is_some();
        }
        let got = Revalidation {
            count: lists.len() as u64,
            all_stars,
        };
        if got.count != self.num_extremal_families || got.all_stars != self.all_stars {
            return Err(Error::Certificate(format!(
                "recorded count={} all_stars={}, recomputed count={} all_stars={}",
                self.num_extremal_families, self.all_stars, got.count, got.all_stars
            )));
        }
        Ok(got)
    }
}

fn require_feasible(q: u8, m: usize) -> Result<()> {
    if !feasible(q, m) {
        return Err(Error::Infeasible(format!(
            "({q},{m}) is outside the envelope\n{}",
            feasibility_table()
        )));
    }
    Ok(())
}

fn enumerate(q: u8, m: usize, r: usize, opts: &CertOptions) -> Result<SearchResult> {
    let spec = SearchSpec::new(q, m, r)?
        .workers(opts.workers)
        .limits(opts.limits);
    let result = search::run(&spec)?;
    if !result.exhausted {
        return Err(Error::BudgetExhausted {
            nodes: result.nodes_explored,
        });
    }
    Ok(result)
}

fn search_summary(result: &SearchResult) -> CheckSummary {
    let mut s = CheckSummary::new("search-exhaustive");
    s.passed = result.exhausted;
    s.metrics.insert("nodes".into(), result.nodes_explored);
    s.metrics.insert("pruned".into(), result.pruned);
    s
}

fn count_summary(name: &str, found: u64, expected: u64) -> CheckSummary {
    let mut s = CheckSummary::new(name);
    s.metrics.insert("found".into(), found);
    s.metrics.insert("expected".into(), expected);
    if found != expected {
        s.passed = false;
        s.first_violation = Some(format!("found {found} families, expected {expected}"));
    }
    s
}

fn attainment_summary(q: u8, m: usize, r: usize, bound: u64) -> Result<(CheckSummary, u64)> {
    let max = max_family_size(q, m, r)?;
    let mut s = CheckSummary::new("bound-attained");
    s.metrics.insert("max_size".into(), max.size);
    s.metrics.insert("bound".into(), bound);
    let witness_ok = max.witness.is_r_wise_intersecting(r)? && max.witness.len() as u64 == max.size;
    if max.size != bound || !witness_ok {
        s.passed = false;
        s.first_violation = Some(format!("maximum {} with witness {}", max.size, max.witness));
    }
    Ok((s, max.size))
}

fn star_summary(families: &[Family]) -> CheckSummary {
    let mut s = CheckSummary::new("all-stars");
    let mut stars = 0u64;
    for (i, f) in families.iter().enumerate() {
        s.families_checked += 1;
        if classify_star(f).is_some() {
            stars += 1;
        } else if s.passed {
            s.passed = false;
            s.first_violation = Some(format!("family #{i} {f} is not a star"));
        }
    }
    s.metrics.insert("stars".into(), stars);
    s.metrics
        .insert("non_stars".into(), families.len() as u64 - stars);
    s
}

fn per_family(
    name: &str,
    families: &[Family],
    check: impl Fn(&Family) -> Result<CheckReport>,
) -> Result<CheckSummary> {
    let mut s = CheckSummary::new(name);
    for (i, f) in families.iter().enumerate() {
        s.absorb(i, &check(f)?);
    }
    Ok(s)
}

struct Draft {
    theorem: Theorem,
    q: u8,
    m: usize,
    extremal_size: u64,
    families: Vec<Family>,
    checks: Vec<CheckSummary>,
    start: Instant,
}

impl Draft {
    fn finish(self) -> Result<Certificate> {
        let count = self.families.len() as u64;
        let all_stars = self.families.iter().all(|f| classify_star(f).is_some());
        let (families, families_sha256) = if count <= FAMILY_LIST_LIMIT {
            (
                Some(self.families.iter().map(Family::to_strings).collect()),
                None,
            )
        } else {
            (None, Some(families_hash(&self.families)))
        };
        Ok(Certificate {
            schema_version: SCHEMA_VERSION,
            theorem: self.theorem,
            q: self.q,
            m: self.m,
            bound: max_bound(self.q, self.m)?,
            extremal_size: self.extremal_size,
            num_extremal_families: count,
            num_stars_expected: count_stars(self.q, self.m),
            all_stars,
            families,
            families_sha256,
            checks: self.checks,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        })
    }
}

/// Enumerates every maximum intersecting family at `(q, m)` and certifies
/// that each is a star, that there are `q·m` of them, and that the double
/// count and the per-coset dichotomy hold on each.
///
/// At `q = 2` the certificate is still produced and records the non-star
/// maxima; its conclusion then fails.
pub fn theorem2_certificate(q: u8, m: usize) -> Result<Certificate> {
    certify(Theorem::Stars, q, m, &CertOptions::default())
}

/// Enumerates every maximum 3-wise intersecting family in `{0,1}^m` and
/// certifies that each is a star, that there are `2m` of them, and that the
/// binary endgame holds on each.
pub fn theorem3_certificate(m: usize) -> Result<Certificate> {
    certify(Theorem::BinaryThreeWise, 2, m, &CertOptions::default())
}

/// Certifies the bound `q^(m-1)`, its attainment and the one-per-cell
/// occupancy of every maximum family.
pub fn lemma_certificate(q: u8, m: usize) -> Result<Certificate> {
    certify(Theorem::Bound, q, m, &CertOptions::default())
}

/// Builds the certificate for `theorem` at `(q, m)`.
pub fn certify(theorem: Theorem, q: u8, m: usize, opts: &CertOptions) -> Result<Certificate> {
    let start = Instant::now();
    if matches!(theorem, Theorem::BinaryThreeWise | Theorem::BinaryCount) && q != 2 {
        return Err(invalid(format!(
            "{theorem} is a statement about q = 2, got q = {q}"
        )));
    }
    require_feasible(q, m)?;
    let bound = max_bound(q, m)?;
    let r = theorem.order();
    let (attained, extremal_size) = attainment_summary(q, m, r, bound)?;

    let (families, mut checks) = match theorem {
        Theorem::BinaryCount => {
            let (report, families) = census(m, opts)?;
            let summary = CheckSummary::from_report(&report, families.len() as u64);
            (families, vec![summary])
        }
        _ => {
            let result = enumerate(q, m, r, opts)?;
            let checks = vec![search_summary(&result)];
            (result.families, checks)
        }
    };
    checks.push(attained);

    match theorem {
        Theorem::Stars | Theorem::BinaryThreeWise => {
            checks.push(count_summary(
                "star-count",
                families.len() as u64,
                count_stars(q, m),
            ));
            checks.push(star_summary(&families));
            checks.push(per_family("lemma-bound", &families, check_lemma_bound)?);
            if m >= 2 {
                checks.push(per_family("double-count", &families, double_count_check)?);
            }
            if theorem == Theorem::Stars && q >= 3 && m >= 2 {
                checks.push(per_family("claim2-dichotomy", &families, claim2_check)?);
            }
            if theorem == Theorem::BinaryThreeWise && m >= 2 {
                checks.push(per_family("endgame", &families, endgame_check)?);
            }
        }
        Theorem::BinaryCount => {}
        Theorem::Bound => {
            checks.push(per_family("lemma-bound", &families, check_lemma_bound)?);
        }
    }

    Draft {
        theorem,
        q,
        m,
        extremal_size,
        families,
        checks,
        start,
    }
    .finish()
}

fn census(m: usize, opts: &CertOptions) -> Result<(CheckReport, Vec<Family>)> {
    if !(1..=5).contains(&m) {
        return Err(Error::Infeasible(format!(
            "the binary census enumerates 2^(2^(m-1)) families; m={m} is outside 1..=5"
        )));
    }
    let pairs = 1u32 << (m - 1);
    let expected = 1u64 << pairs;
    let mut report = CheckReport::new("binary-count");

    let mut by_selection = Vec::with_capacity(expected as usize);
    for bits in 0..expected {
        let f = selection_family(m, bits)?;
        if !f.is_intersecting() && report.passed() {
            report.violate(format!("selection {bits:#x} gives non-intersecting {f}"));
        }
        by_selection.push(f);
    }
    by_selection.sort_unstable();

    let searched = enumerate(2, m, 2, opts)?;
    report.metric("selections", by_selection.len() as u64);
    report.metric("search_count", searched.count);
    report.metric("expected", expected);
    report.metric("search_nodes", searched.nodes_explored);

    if by_selection.len() as u64 != expected {
        report.violate(format!(
            "{} selections, expected {expected}",
            by_selection.len()
        ));
    }
    if searched.count != expected {
        report.violate(format!(
            "search found {}, expected {expected}",
            searched.count
        ));
    }
    match by_selection
        .iter()
        .zip(&searched.families)
        .position(|(a, b)| a != b)
    {
        Some(i) => report.violate(format!(
            "family sets differ at #{i}: {} vs {}",
            by_selection[i], searched.families[i]
        )),
        None if by_selection.len() == searched.families.len() => {
            report.confirm(format!(
                "{expected} families from both selection and search"
            ));
        }
        None => report.violate("family sets differ in length"),
    }
    Ok((report, by_selection))
}

/// Counts the maximum intersecting binary families two ways, by one-per-pair
/// selections and by the transversal search, and requires both to equal
/// `2^(2^(m-1))` with identical family sets. Accepts `1 <= m <= 5`.
pub fn binary_count_check(m: usize) -> Result<CheckReport> {
    census(m, &CertOptions::default()).map(|(report, _)| report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem2_small() {
        let c = theorem2_certificate(3, 2).unwrap();
        assert_eq!(c.num_extremal_families, 6);
        assert!(c.all_stars);
        assert!(c.conclusion_holds(), "{c:#?}");
        assert!(c.check("claim2-dichotomy").unwrap().passed);
    }

    #[test]
    fn theorem2_fails_for_binary() {
        let c = theorem2_certificate(2, 3).unwrap();
        assert_eq!(c.num_extremal_families, 16);
        assert!(!c.all_stars);
        assert!(!c.conclusion_holds());
        let fams = c.families.as_ref().unwrap();
        assert!(fams.contains(&vec![
            "000".into(),
            "011".into(),
            "101".into(),
            "110".into()
        ]));
        assert_eq!(c.check("all-stars").unwrap().metrics["stars"], 6);
    }

    #[test]
    fn theorem3_small() {
        for (m, count) in [(1, 2), (2, 4), (3, 6), (4, 8)] {
            let c = theorem3_certificate(m).unwrap();
            assert_eq!(c.num_extremal_families, count);
            assert!(c.all_stars && c.conclusion_holds(), "m={m}: {c:#?}");
        }
    }

    #[test]
    fn census_examples() {
        for (m, expected) in [(1, 2), (2, 4), (3, 16)] {
            let r = binary_count_check(m).unwrap();
            assert!(r.passed());
            assert_eq!(r.metrics["expected"], expected);
            assert_eq!(r.metrics["search_count"], expected);
        }
        assert!(binary_count_check(6).is_err());
    }

    #[test]
    fn lemma_certificate_small() {
        let c = lemma_certificate(4, 2).unwrap();
        assert_eq!((c.bound, c.extremal_size), (4, 4));
        assert!(c.conclusion_holds());
    }

    #[test]
    fn document_round_trip_and_tamper() {
        let c = theorem3_certificate(3).unwrap();
        let doc = c.to_document();
        let back = Certificate::from_document(&doc).unwrap();
        assert_eq!(back, c);
        assert_eq!(
            back.revalidate().unwrap(),
            Revalidation {
                count: 6,
                all_stars: true
            }
        );

        let tampered = doc.replacen("\"all_stars\": true", "\"all_stars\": false", 1);
        assert!(Certificate::from_document(&tampered).is_err());
        assert!(Certificate::from_document("{}").is_err());
    }

    #[test]
    fn field_order_is_fixed() {
        let doc = theorem2_certificate(3, 2).unwrap().to_document();
        let keys = [
            "schema_version",
            "theorem",
            "\"q\"",
            "\"m\"",
            "bound",
            "extremal_size",
            "num_extremal_families",
            "num_stars_expected",
            "all_stars",
            "\"families\"",
            "checks",
            "elapsed_ms",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| doc.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|p| p[0] < p[1]), "{pos:?}");
    }

    #[test]
    fn refuses_infeasible_and_wrong_alphabet() {
        assert!(matches!(
            theorem2_certificate(3, 4),
            Err(Error::Infeasible(_))
        ));
        assert!(certify(Theorem::BinaryThreeWise, 3, 2, &CertOptions::default()).is_err());
        assert_eq!("count-q2".parse::<Theorem>().unwrap(), Theorem::BinaryCount);
        assert!("thm9".parse::<Theorem>().is_err());
    }

    #[test]
    fn budget_exhaustion_refuses_to_certify() {
        let opts = CertOptions {
            workers: 1,
            limits: search::Limits {
                node_budget: 5,
                ..Default::default()
            },
        };
        assert!(matches!(
            certify(Theorem::Stars, 3, 3, &opts),
            Err(Error::BudgetExhausted { .. })
        ));
    }
}
