//! Lexicographic search for the first maximum family that is not a star.
//!
//! Words are decided in index order, include before exclude, so families are
//! met in lexicographic order of their sorted member lists and the first hit
//! is the lexicographically first one.

use super::budget::{Budget, Meter};
use super::transversal::Engine;
use super::{rwise, Mode, SearchResult, SearchSpec};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::universe::BitSet;

struct Lex<'a> {
    engine: &'a Engine,
    cell_ids: Vec<u32>,
    budget: &'a Budget,
}

enum Flow {
    Continue,
    Found(Vec<u32>),
    Stop,
}

impl Lex<'_> {
    fn is_star(&self, chosen: &[u32]) -> bool {
        let u = &self.engine.u;
        let stars_size = u.size / u.q() as usize;
        chosen.len() == stars_size
            && chosen
                .iter()
                .fold(u32::MAX, |acc, &x| acc & u.agree_mask(chosen[0], x))
                != 0
    }

    /// Free cells that still have an allowed member at index `>= from`.
    fn live_free_cells(&self, from: u32, allowed: &BitSet, occupied: &[bool]) -> usize {
        self.engine
            .cells
            .iter()
            .zip(occupied)
            .filter(|(cell, &occ)| !occ && cell.iter().any(|&w| w >= from && allowed.contains(w)))
            .count()
    }

    fn walk(
        &self,
        i: u32,
        chosen: &mut Vec<u32>,
        occupied: &mut [bool],
        allowed: &BitSet,
        meter: &mut Meter,
    ) -> Flow {
        if !self.budget.tick(meter) {
            return Flow::Stop;
        }
        let target = self.engine.target;
        if chosen.len() == target {
            return if self.is_star(chosen) {
                Flow::Continue
            } else {
                Flow::Found(chosen.clone())
            };
        }
        if i as usize == self.engine.u.size
            || chosen.len() + self.live_free_cells(i, allowed, occupied) < target
        {
            meter.pruned += 1;
            return Flow::Continue;
        }

        let cell = self.cell_ids[i as usize] as usize;
        if !occupied[cell]
            && allowed.contains(i)
            && rwise::extends(&self.engine.u, self.engine.r, chosen, i)
        {
            let mut next = BitSet::new(self.engine.u.size);
            next.and_from(allowed, &self.engine.nbrs[i as usize]);
            chosen.push(i);
            occupied[cell] = true;
            let flow = self.walk(i + 1, chosen, occupied, &next, meter);
            occupied[cell] = false;
            chosen.pop();
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
        }
        self.walk(i + 1, chosen, occupied, allowed, meter)
    }
}

pub(crate) fn run_first_nonstar(spec: &SearchSpec) -> Result<SearchResult> {
    debug_assert_eq!(spec.mode, Mode::FirstNonstar);
    let engine = Engine::new(spec.q, spec.m, spec.r, spec.target_size)?;
    let budget = Budget::new(spec.limits);
    let lex = Lex {
        cell_ids: engine.u.cell_ids(),
        engine: &engine,
        budget: &budget,
    };
    let mut meter = Meter::default();
    let mut occupied = vec![false; engine.cells.len()];
    let all = BitSet::full(engine.u.size);
    let flow = lex.walk(0, &mut Vec::new(), &mut occupied, &all, &mut meter);
    budget.flush(&mut meter);

    let (families, exhausted) = match flow {
        Flow::Found(f) => (vec![engine.u.family(f)], true),
        Flow::Continue => (Vec::new(), true),
        Flow::Stop => (Vec::new(), false),
    };
    Ok(SearchResult {
        count: families.len() as u64,
        families,
        nodes_explored: meter.nodes,
        pruned: meter.pruned,
        exhausted,
    })
}

/// The lexicographically first maximum `r`-wise intersecting family that is
/// not a star, or `None` when every maximum family is a star.
///
/// ```
/// use ekr_words::search::first_nonstar_max;
/// let f = first_nonstar_max(2, 3, 2).unwrap().unwrap();
/// assert_eq!(f.to_string(), "{000,001,010,100}");
/// assert!(first_nonstar_max(3, 3, 2).unwrap().is_none());
/// ```
pub fn first_nonstar_max(q: u8, m: usize, r: usize) -> Result<Option<Family>> {
    let spec = SearchSpec::new(q, m, r)?.mode(Mode::FirstNonstar);
    let result = run_first_nonstar(&spec)?;
    if !result.exhausted {
        return Err(Error::BudgetExhausted {
            nodes: result.nodes_explored,
        });
    }
    Ok(result.families.into_iter().next())
}
