//! Partition devices over `Z_q^m`: diagonal coset cells, binary complementary
//! pairs, and prefix / first-letter slices with suffix projection.

mod coset;
mod pairs;
mod slice;

pub use coset::{cell_of, coset_cells, diagonal_coset, CosetCell};
pub use pairs::{
    complementary_pairs, family_from_selection, selection_family, selection_from_family,
    ComplementaryPair,
};
pub use slice::{letter_slices, prefix_counts, prefix_slice, Selector, SliceView};
