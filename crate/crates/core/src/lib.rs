//! Intersecting families of words over a finite alphabet.
//!
//! Two words of length `m` over `Z_q` intersect when they agree in some
//! coordinate. An intersecting family has at most `q^(m-1)` members, and the
//! stars (all words with a fixed letter at a fixed coordinate) attain that.
//! For `q >= 3` the stars are the only maximum families; for `q = 2` there are
//! `2^(2^(m-1))` maximum families, but only the `2m` stars are 3-wise
//! intersecting.
//!
//! The crate provides the objects ([`Word`], [`Family`], [`StarSpec`]), the
//! partition devices behind the counting arguments ([`partitions`]), exhaustive
//! enumeration ([`search`]) and checkers that turn those enumerations into
//! certificates ([`verify`]).
//!
//! ```
//! use ekr_words::{classify_star, max_bound, search};
//!
//! assert_eq!(max_bound(3, 3).unwrap(), 9);
//! let result = search::enumerate_max_intersecting(3, 2).unwrap();
//! assert_eq!(result.count, 6);
//! assert!(result.families.iter().all(|f| classify_star(f).is_some()));
//! ```

mod error;
mod family;
mod star;
mod universe;
mod word;

pub mod partitions;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use family::Family;
pub use star::{classify_star, count_stars, max_bound, star, StarSpec};
pub use word::{
    common_position, intersects, universe_cap, universe_size, Alphabet, Word, UNIVERSE_CAP,
    UNIVERSE_ENV,
};

// The guide's listings run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/cosets.md")]
    mod cosets {}
    #[doc = include_str!("../../../book/src/binary.md")]
    mod binary {}
    #[doc = include_str!("../../../book/src/letter_slices.md")]
    mod letter_slices {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
