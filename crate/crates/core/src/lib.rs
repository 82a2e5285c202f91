//! Exact arithmetic for counting pairwise-commuting tuples of permutations,
//! the subgroup growth series behind them, and the log-concavity landscape
//! of the normalized counts.
//!
//! Everything works with arbitrary-precision integers and rationals; there
//! is no floating-point path anywhere. The discriminants whose signs are
//! scanned are differences of nearly equal numbers with hundreds of digits,
//! so approximate prescreens are excluded by design.

pub mod arith;
pub mod bounds;
pub mod commuting_counts;
pub mod error;
pub mod logconcavity;
pub mod oracle;
pub mod partitions;
pub mod subgroup_growth;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
