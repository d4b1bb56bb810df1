//! Burrows-Wheeler transforms under arbitrary alphabet orderings.
//!
//! The number of runs in the BWT of a text depends on the total order given
//! to the alphabet, and squeezing that number down is worthwhile for anything
//! stored or indexed in run-length-compressed form. This crate provides:
//!
//! - [`bwt`]: BWT construction for any alphabet ordering, run counting,
//!   LF-mapping, and inversion.
//! - [`search`]: exact (factorial) and local-search minimization of the run
//!   count over alphabet orderings, plus ordering-sensitivity statistics.
//! - [`cao`]: an optimal near-linear-time solver for the constrained variant
//!   where only per-string terminator symbols may be reordered.
//! - [`reductions`]: constructive gadgets mapping (1,2)-TSP path instances to
//!   column-ordering and alphabet-ordering instances, with cost accounting
//!   and L-reduction condition checks.
//! - [`wheeler`]: Wheeler graphs restricted to forests of out-trees, their
//!   induced BWT strings, and brute-force source ordering.

pub mod alphabet;
pub mod bwt;
pub mod cao;
pub mod perm;
pub mod reductions;
pub mod search;
pub mod wheeler;

mod suffix;

pub use alphabet::{AlphabetError, AlphabetOrdering, Symbol, Text};
pub use bwt::{build_bwt, count_runs, invert_bwt, lf_path, BwtError, BwtOutput};
