//! Maximum size of an r-wise intersecting family.

use super::budget::{Budget, Meter};
use super::transversal::Engine;
use super::{rwise, Limits, BRANCH_AND_BOUND_LIMIT};
use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::star::{max_bound, star, StarSpec};
use crate::universe::BitSet;
use crate::word::universe_size;

/// How the maximum was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Branch-and-bound over the coset cells, exhaustive.
    BranchAndBound,
    /// The coset bound `q^(m-1)` together with a star attaining it.
    BoundWithStar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFamily {
    pub size: u64,
    pub witness: Family,
    pub nodes_explored: u64,
    pub method: Method,
}

struct Bnb<'a> {
    engine: &'a Engine,
    budget: &'a Budget,
    best: Vec<u32>,
}

impl Bnb<'_> {
    fn live_cells(&self, from: usize, allowed: &BitSet) -> usize {
        self.engine.cells[from..]
            .iter()
            .filter(|cell| cell.iter().any(|&w| allowed.contains(w)))
            .count()
    }

    fn walk(&mut self, depth: usize, chosen: &mut Vec<u32>, allowed: &BitSet, meter: &mut Meter) {
        if !self.budget.tick(meter) {
            return;
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        let cells = &self.engine.cells;
        if depth == cells.len() || chosen.len() + self.live_cells(depth, allowed) <= self.best.len()
        {
            meter.pruned += 1;
            return;
        }
        for &w in &cells[depth] {
            if !allowed.contains(w) || !rwise::extends(&self.engine.u, self.engine.r, chosen, w) {
                continue;
            }
            let mut next = BitSet::new(self.engine.u.size);
            next.and_from(allowed, &self.engine.nbrs[w as usize]);
            chosen.push(w);
            self.walk(depth + 1, chosen, &next, meter);
            chosen.pop();
        }
        self.walk(depth + 1, chosen, allowed, meter);
    }
}

/// The largest size of an `r`-wise intersecting family in `Z_q^m`, with a
/// witness of that size.
///
/// Small universes (`q^m <= 2^10`) are searched exhaustively by
/// branch-and-bound, using the number of still-usable coset cells as the
/// upper bound. Larger instances with `r` in `{2, 3}` are answered by the
/// coset bound and a star attaining it.
pub fn max_family_size(q: u8, m: usize, r: usize) -> Result<MaxFamily> {
    if r < 2 {
        return Err(invalid(format!(
            "intersection order must be at least 2, got {r}"
        )));
    }
    let bound = max_bound(q, m)?;
    if universe_size(q, m)? > BRANCH_AND_BOUND_LIMIT {
        if r > 3 {
            return Err(Error::Infeasible(format!(
                "r={r} on {q}^{m} words is beyond the branch-and-bound limit"
            )));
        }
        let witness = star(
            q,
            m,
            StarSpec {
                position: 1,
                letter: 0,
            },
        )?;
        return Ok(MaxFamily {
            size: bound,
            witness,
            nodes_explored: 0,
            method: Method::BoundWithStar,
        });
    }

    let engine = Engine::new(q, m, r, bound)?;
    let budget = Budget::new(Limits::default());
    let mut bnb = Bnb {
        engine: &engine,
        budget: &budget,
        best: Vec::new(),
    };
    let mut meter = Meter::default();
    bnb.walk(0, &mut Vec::new(), &BitSet::full(engine.u.size), &mut meter);
    budget.flush(&mut meter);
    if budget.tripped() {
        return Err(Error::BudgetExhausted { nodes: meter.nodes });
    }
    let best = std::mem::take(&mut bnb.best);
    Ok(MaxFamily {
        size: best.len() as u64,
        witness: engine.u.family(best),
        nodes_explored: meter.nodes,
        method: Method::BranchAndBound,
    })
}
