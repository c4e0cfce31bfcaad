//! Depth-first transversal over the canonical coset cells.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::budget::{Budget, Meter};
use super::{rwise, Mode, SearchResult, SearchSpec, ENUMERATION_UNIVERSE_LIMIT};
use crate::error::{Error, Result};
use crate::universe::{neighbourhoods, BitSet, Universe};

/// Cells fixed before the work is fanned out to workers.
const SPLIT_DEPTH: usize = 2;

pub(crate) struct Engine {
    pub u: Universe,
    pub cells: Vec<Vec<u32>>,
    pub nbrs: Vec<BitSet>,
    pub r: usize,
    pub target: usize,
}

impl Engine {
    pub fn new(q: u8, m: usize, r: usize, target: u64) -> Result<Self> {
        let u = Universe::new(q, m)?;
        if u.size as u64 > ENUMERATION_UNIVERSE_LIMIT {
            return Err(Error::Infeasible(format!(
                "universe {q}^{m} = {} exceeds the enumeration limit {ENUMERATION_UNIVERSE_LIMIT}",
                u.size
            )));
        }
        let cells = u.cells();
        let nbrs = neighbourhoods(&u);
        Ok(Engine {
            u,
            cells,
            nbrs,
            r,
            target: target as usize,
        })
    }

    /// True iff at least `need` cells in `from..` still have an allowed member.
    pub fn enough_live_cells(&self, from: usize, allowed: &BitSet, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        let mut live = 0;
        for cell in &self.cells[from..] {
            if cell.iter().any(|&w| allowed.contains(w)) {
                live += 1;
                if live >= need {
                    return true;
                }
            }
        }
        false
    }

    /// Admissible extensions at `depth`, in traversal order: the cell members
    /// by ascending shift, then skipping the cell when the target allows it.
    fn children(
        &self,
        depth: usize,
        chosen: &[u32],
        allowed: &BitSet,
        budget: &Budget,
        meter: &mut Meter,
    ) -> Vec<Option<(u32, BitSet)>> {
        let mut out = Vec::new();
        let remaining_after = self.cells.len() - depth - 1;
        for &w in &self.cells[depth] {
            if !budget.tick(meter) {
                return out;
            }
            if chosen.len() >= self.target
                || !allowed.contains(w)
                || !rwise::extends(&self.u, self.r, chosen, w)
            {
                meter.pruned += 1;
                continue;
            }
            let mut next = BitSet::new(self.u.size);
            next.and_from(allowed, &self.nbrs[w as usize]);
            let need = self.target - chosen.len() - 1;
            if !self.enough_live_cells(depth + 1, &next, need) {
                meter.pruned += 1;
                continue;
            }
            out.push(Some((w, next)));
        }
        let need = self.target - chosen.len();
        if need <= remaining_after
            && self.enough_live_cells(depth + 1, allowed, need)
            && budget.tick(meter)
        {
            out.push(None);
        }
        out
    }
}

/// Results of one subtree.
#[derive(Default)]
struct Harvest {
    families: Vec<Vec<u32>>,
    count: u64,
    meter: Meter,
}

struct Walker<'a> {
    engine: &'a Engine,
    budget: &'a Budget,
    keep: bool,
}

impl Walker<'_> {
    fn walk(&self, depth: usize, chosen: &mut Vec<u32>, allowed: &BitSet, out: &mut Harvest) {
        if self.budget.tripped() {
            return;
        }
        if depth == self.engine.cells.len() {
            if chosen.len() == self.engine.target {
                out.count += 1;
                if self.keep {
                    let mut f = chosen.clone();
                    f.sort_unstable();
                    out.families.push(f);
                }
            }
            return;
        }
        let kids = self
            .engine
            .children(depth, chosen, allowed, self.budget, &mut out.meter);
        for kid in kids {
            match kid {
                Some((w, next)) => {
                    chosen.push(w);
                    self.walk(depth + 1, chosen, &next, out);
                    chosen.pop();
                }
                None => self.walk(depth + 1, chosen, allowed, out),
            }
        }
    }

    /// Expands to `stop` depth and returns the frontier in traversal order.
    fn frontier(
        &self,
        depth: usize,
        stop: usize,
        chosen: &mut Vec<u32>,
        allowed: &BitSet,
        meter: &mut Meter,
        out: &mut Vec<(Vec<u32>, BitSet)>,
    ) {
        if depth == stop {
            out.push((chosen.clone(), allowed.clone()));
            return;
        }
        for kid in self
            .engine
            .children(depth, chosen, allowed, self.budget, meter)
        {
            match kid {
                Some((w, next)) => {
                    chosen.push(w);
                    self.frontier(depth + 1, stop, chosen, &next, meter, out);
                    chosen.pop();
                }
                None => self.frontier(depth + 1, stop, chosen, allowed, meter, out),
            }
        }
    }
}

pub(crate) fn run(spec: &SearchSpec) -> Result<SearchResult> {
    let engine = Engine::new(spec.q, spec.m, spec.r, spec.target_size)?;
    let budget = Budget::new(spec.limits);
    let walker = Walker {
        engine: &engine,
        budget: &budget,
        keep: spec.mode == Mode::EnumerateAll,
    };

    let all = BitSet::full(engine.u.size);
    let mut root_meter = Meter::default();
    let mut roots = Vec::new();
    let stop = SPLIT_DEPTH.min(engine.cells.len());
    // no family can hold more than one word per cell
    if spec.target_size <= engine.cells.len() as u64 {
        walker.frontier(0, stop, &mut Vec::new(), &all, &mut root_meter, &mut roots);
    }

    let slots: Vec<Mutex<Option<Harvest>>> = roots.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some((chosen, allowed)) = roots.get(i) else {
            break;
        };
        let mut harvest = Harvest::default();
        walker.walk(stop, &mut chosen.clone(), allowed, &mut harvest);
        budget.flush(&mut harvest.meter);
        *slots[i].lock().unwrap() = Some(harvest);
    };
    let workers = spec.workers.clamp(1, roots.len().max(1));
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }
    budget.flush(&mut root_meter);

    let mut result = SearchResult {
        families: Vec::new(),
        count: 0,
        nodes_explored: root_meter.nodes,
        pruned: root_meter.pruned,
        exhausted: !budget.tripped(),
    };
    let mut families = Vec::new();
    for slot in slots {
        let Some(h) = slot.into_inner().unwrap() else {
            result.exhausted = false;
            continue;
        };
        result.count += h.count;
        result.nodes_explored += h.meter.nodes;
        result.pruned += h.meter.pruned;
        families.extend(h.families);
    }
    families.sort_unstable();
    result.families = families.into_iter().map(|f| engine.u.family(f)).collect();
    Ok(result)
}
