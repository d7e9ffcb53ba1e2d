//! Data shipped with the library.

/// Presentation of the mod-2 cohomology ring of small group 64#139 (Hall–Senior 260).
pub const HS260: &str = include_str!("../fixtures/hs260.gcr");

/// Claim manifest reproducing the counterexample computations on [`HS260`].
pub const HS260_CLAIMS: &str = include_str!("../fixtures/hs260.claims");
