use super::report::CheckReport;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::partitions::coset_cells;
use crate::star::max_bound;

/// Checks `|F| <= q^(m-1)` through the coset partition: every cell holds at
/// most one member of an intersecting family.
pub fn check_lemma_bound(family: &Family) -> Result<CheckReport> {
    if let Some((x, y)) = family.first_disjoint_pair() {
        return Err(Error::Precondition(format!(
            "family is not intersecting: {x} and {y} disagree everywhere"
        )));
    }
    let (q, m) = (family.q(), family.m());
    let bound = max_bound(q, m)?;
    let cells = coset_cells(q, m)?;
    let mut report = CheckReport::new("lemma-bound");
    let mut max_occupancy = 0;
    for cell in &cells {
        let occ = cell.occupancy(family);
        max_occupancy = max_occupancy.max(occ);
        if occ > 1 {
            report.violate(format!("cell {} holds {occ} members", cell.base()));
        } else {
            report.confirm(format!("cell {}: {occ}", cell.base()));
        }
    }
    if family.len() as u64 > bound {
        report.violate(format!("|F| = {} exceeds {bound}", family.len()));
    }
    report.metric("size", family.len() as u64);
    report.metric("bound", bound);
    report.metric("cells", cells.len() as u64);
    report.metric("max_occupancy", max_occupancy as u64);
    Ok(report)
}
