use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use super::Limits;

/// Node and time accounting shared by all workers of one search.
pub(crate) struct Budget {
    limits: Limits,
    start: Instant,
    nodes: AtomicU64,
    tripped: AtomicBool,
}

/// Per-worker counter flushed into the shared [`Budget`] in batches.
#[derive(Debug, Default)]
pub(crate) struct Meter {
    pub nodes: u64,
    pub pruned: u64,
    unflushed: u64,
}

const FLUSH_EVERY: u64 = 1024;

impl Budget {
    pub fn new(limits: Limits) -> Self {
        Budget {
            limits,
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            tripped: AtomicBool::new(false),
        }
    }

    #[inline]
    pub fn tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }

    /// Records one node; returns false once the search must stop.
    #[inline]
    pub fn tick(&self, meter: &mut Meter) -> bool {
        meter.nodes += 1;
        meter.unflushed += 1;
        if meter.unflushed >= FLUSH_EVERY {
            self.flush(meter);
        }
        !self.tripped()
    }

    pub fn flush(&self, meter: &mut Meter) {
        let total = self.nodes.fetch_add(meter.unflushed, Ordering::Relaxed) + meter.unflushed;
        meter.unflushed = 0;
        if total > self.limits.node_budget || self.start.elapsed() > self.limits.time_budget {
            self.tripped.store(true, Ordering::Relaxed);
        }
    }
}
