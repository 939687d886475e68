//! Exhaustive search for binary sequences with minimum peak sidelobe level.
//!
//! The crate is organized around five pieces:
//!
//! - [`seqcore`]: packed ±1 sequences and autocorrelation kernels.
//! - [`symmetry`]: the order-8 group generated by reversal, negation and
//!   alternating sign, orbits and canonical representatives.
//! - [`oracle`]: brute-force enumeration used as ground truth for small lengths.
//! - [`search`]: the two-sided branch-and-bound engine.
//! - [`catalog`]: result/checkpoint file formats, table reports and benchmarks.

pub mod catalog;
mod error;
pub mod oracle;
pub mod search;
pub mod seqcore;
pub mod symmetry;

pub use error::{Error, Result};
pub use search::ClassRecord;
pub use seqcore::{BinarySequence, CorrelationProfile, MeritFactor};
