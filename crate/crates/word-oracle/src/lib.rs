//! Independent correctness oracles.
//!
//! A second word-problem decider built on an exact integer curve action
//! (laminations of a punctured disk, piecewise-linear generator updates),
//! plus exhaustive brute-force conjugator and centralizer searches.
//! These exist to cross-check the normal-form engine and to generate
//! ground truth for tests; the attack code never calls them.

mod brute;
mod curve;

pub use brute::{brute_centralizer, brute_conjugators, BruteResult};
pub use curve::{oracle_equal, CurveCoordinates};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("coordinate overflow while applying the curve action")]
    Overflow,
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("oracle supports at most {limit} strands, got {n}")]
    TooManyStrands { n: usize, limit: usize },
    #[error(transparent)]
    Braid(#[from] braid_core::BraidError),
}
