//! Exhaustive enumeration of maximum intersecting and r-wise intersecting
//! families.
//!
//! A maximum intersecting family meets every diagonal coset cell exactly
//! once, so the search is a depth-first transversal over the cells: pick one
//! member per cell, drop any candidate that fails to intersect what is already
//! chosen, and prune as soon as some later cell has no admissible member left.
//! For `q = 2` the cells are the complementary pairs and the transversal is the
//! enumeration of pair selections.
//!
//! Certified paths never quotient by symmetry: every family is counted.

mod bnb;
mod budget;
mod lex;
mod transversal;

use std::time::Duration;

use crate::error::{invalid, Result};
use crate::family::Family;
use crate::star::max_bound;

pub use bnb::{max_family_size, MaxFamily, Method};
pub use lex::first_nonstar_max;

/// Largest universe for which the enumerators build their adjacency tables.
pub const ENUMERATION_UNIVERSE_LIMIT: u64 = 1 << 12;

/// Largest universe for the branch-and-bound in [`max_family_size`].
pub const BRANCH_AND_BOUND_LIMIT: u64 = 1 << 10;

/// Instances with at most this many transversal leaves (`q^(q^(m-1))`) are
/// accepted by the certifying commands.
pub const FEASIBLE_LEAVES: u64 = 1 << 24;

/// What the enumerator should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    EnumerateAll,
    CountOnly,
    /// Stop at the lexicographically first maximum family that is not a star.
    FirstNonstar,
}

/// Node and wall-clock budgets. Exceeding either ends the search with
/// `exhausted = false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub node_budget: u64,
    pub time_budget: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: 1_000_000_000,
            time_budget: Duration::from_secs(300),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub q: u8,
    pub m: usize,
    /// Intersection order; 2 is plain pairwise intersection.
    pub r: usize,
    pub target_size: u64,
    pub mode: Mode,
    pub limits: Limits,
    /// Threads used for the subtree fan-out. Never affects the output.
    pub workers: usize,
}

impl SearchSpec {
    /// Maximum families (`target_size = q^(m-1)`) with default limits.
    pub fn new(q: u8, m: usize, r: usize) -> Result<Self> {
        let target_size = max_bound(q, m)?;
        if r < 2 {
            return Err(invalid(format!(
                "intersection order must be at least 2, got {r}"
            )));
        }
        Ok(SearchSpec {
            q,
            m,
            r,
            target_size,
            mode: Mode::EnumerateAll,
            limits: Limits::default(),
            workers: 1,
        })
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn target_size(mut self, target: u64) -> Self {
        self.target_size = target;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Canonically sorted; empty in count-only mode.
    pub families: Vec<Family>,
    pub count: u64,
    pub nodes_explored: u64,
    pub pruned: u64,
    /// The whole search space was covered. Required for certificates.
    pub exhausted: bool,
}

/// Runs the enumerator described by `spec`.
pub fn run(spec: &SearchSpec) -> Result<SearchResult> {
    match spec.mode {
        Mode::FirstNonstar => lex::run_first_nonstar(spec),
        _ => transversal::run(spec),
    }
}

/// All intersecting families of size `q^(m-1)`.
pub fn enumerate_max_intersecting(q: u8, m: usize) -> Result<SearchResult> {
    run(&SearchSpec::new(q, m, 2)?)
}

/// All `r`-wise intersecting families of size `q^(m-1)`.
pub fn enumerate_max_rwise(q: u8, m: usize, r: usize) -> Result<SearchResult> {
    run(&SearchSpec::new(q, m, r)?)
}

/// Whether `(q, m)` is within the desk-scale envelope used by the certifying
/// commands: at most [`FEASIBLE_LEAVES`] transversal leaves.
///
/// This admits `q = 2, m <= 5`, `q = 3, m <= 3`, `q = 4, m <= 2` and a few
/// more two-letter-long instances.
pub fn feasible(q: u8, m: usize) -> bool {
    let Ok(cells) = max_bound(q, m) else {
        return false;
    };
    let Ok(cells) = u32::try_from(cells) else {
        return false;
    };
    (q as u64)
        .checked_pow(cells)
        .is_some_and(|leaves| leaves <= FEASIBLE_LEAVES)
}

/// Human-readable listing of the feasible instances.
pub fn feasibility_table() -> String {
    let mut out = String::from("feasible instances (q: max m):\n");
    for q in 2u8..=10 {
        let max_m = (1..=20).take_while(|&m| feasible(q, m)).last();
        if let Some(m) = max_m {
            out.push_str(&format!("  q={q}: m<={m}\n"));
        }
    }
    out
}

/// Shared r-wise bookkeeping for the search engines.
pub(crate) mod rwise {
    use crate::universe::Universe;

    /// Whether adding `w` keeps `chosen ∪ {w}` r-wise intersecting, given
    /// that `chosen` already is and that `w` intersects every chosen word.
    ///
    /// Only subsets containing `w` are tested. The common coordinates of such
    /// a subset are the AND of the agreement masks of `w` with each other
    /// member, so a partial subset whose mask is already empty fails for
    /// every completion.
    pub fn extends(u: &Universe, r: usize, chosen: &[u32], w: u32) -> bool {
        let need = r.min(chosen.len() + 1) - 1;
        if need <= 1 {
            return true;
        }
        let masks: Vec<u32> = chosen.iter().map(|&x| u.agree_mask(x, w)).collect();
        let full = if u.m >= 32 {
            u32::MAX
        } else {
            (1u32 << u.m) - 1
        };
        all_subsets_alive(&masks, 0, need, full)
    }

    fn all_subsets_alive(masks: &[u32], start: usize, need: usize, acc: u32) -> bool {
        if need == 0 {
            return acc != 0;
        }
        (start..=masks.len() - need).all(|i| {
            let next = acc & masks[i];
            next != 0 && all_subsets_alive(masks, i + 1, need - 1, next)
        })
    }
}
