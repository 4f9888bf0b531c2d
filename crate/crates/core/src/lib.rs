//! Enumeration schemes for vincular pattern avoidance.
//!
//! An enumeration scheme is a finite set of `(prefix, gap basis, deletion set)`
//! triples that encodes a polynomial-time system of recurrences for
//! `|Av_n(B)|`. This crate discovers schemes automatically, deepens them to a
//! required clearance, and evaluates them as memoized recurrences that track
//! ES-compatible statistics (descents, inversions, peaks, right-to-left
//! extrema, the reversed major index, …) as multivariate polynomials.
//!
//! Everything is cross-checked against a brute-force [`oracle`].

pub mod discovery;
pub mod error;
pub mod evaluator;
pub mod oracle;
pub mod pattern;
pub mod perm;
pub mod poly;
pub mod scheme;
pub mod statistics;

pub use discovery::{
    deepen_scheme, discover, discover_for_stats, discover_with_symmetry, ensure_clearance,
    find_gap_basis, is_reversibly_deletable, Deletability, Frontier, Outcome, SearchBounds,
};
pub use error::{Error, Result};
pub use evaluator::{
    count, distribution, distribution_via_reversal, oeis_format, reversed_scheme, sequence,
    Evaluator,
};
pub use oracle::{brute_count, brute_distribution, Oracle, PrefixQuery};
pub use pattern::{parse_pattern_set, Symmetry, VincularPattern};
pub use perm::{Perm, SpacingVector, Word};
pub use poly::DistPolynomial;
pub use scheme::{Clearance, Scheme, SchemeTriple};
pub use statistics::{builtin, parse_stats, CompositeStatistic, MultiStat, Statistic};
