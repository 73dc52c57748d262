//! Conjugacy machinery for braid groups.
//!
//! Cycling/decycling with conjugator tracking, super summit sets closed
//! under simple-element conjugation, the conjugacy decision and search
//! problems, a cheap conjugacy invariant, and a simultaneous-conjugacy
//! solver with centralizer-coset correction.

mod solve;
mod summit;

pub use solve::{
    cdp, csp_solve, lambda_invariant, mscsp_solve, CdpOutcome, ConjEquation, CspOutcome,
    MscspInstance, MscspOutcome,
};
pub use summit::{
    cycling_decycling, sss_compute, sss_compute_cached, SummitSet, DEFAULT_SSS_BUDGET,
};
