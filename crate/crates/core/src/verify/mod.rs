//! Checkers for the counting devices behind the star theorems, applied to
//! concrete families, and exhaustive certificates built on the search.

mod certificate;
mod claims;
mod lemma;
mod report;

pub use certificate::{
    binary_count_check, certify, lemma_certificate, theorem2_certificate, theorem3_certificate,
    CertOptions, Certificate, CheckSummary, Revalidation, Theorem, FAMILY_LIST_LIMIT,
    SCHEMA_VERSION,
};
pub use claims::{
    claim1_check, claim2_analyze, claim2_check, double_count_check, endgame_check, nonzero_split,
    nonzero_vector_split, Claim2Case, Claim2Class,
};
pub use lemma::check_lemma_bound;
pub use report::{CheckReport, Witness};
