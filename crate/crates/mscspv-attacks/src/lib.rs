//! Attacks on simultaneous-conjugacy instances published by the
//! trusted-third-party key generator, plus generic variants for untagged
//! and subgroup-structured systems.
//!
//! Every attack returns an [`AttackReport`]; an outcome of `solved` always
//! comes with an exact equation system that the candidate conjugator has
//! been verified against.

mod anchored;
mod ce;
mod config;
mod length;
mod mscsp_ce;
mod pairs;
mod subgroups;

pub use anchored::{attack_centralizer, attack_general_mscspv, build_middle_map, lookup_short_form, MiddleMap};
pub use ce::{attack_ce_partial, attack_ce_subgroup};
pub use config::{
    AttackConfig, AttackReport, Counters, LengthMode, Outcome, SearchMode, StrategyTag,
};
pub use length::attack_length;
pub use mscsp_ce::{attack_mscsp_ce_length, SubgroupedMscsp};
pub use pairs::{central_adjust, enumerate_middles, exp_delta_sq, middle_candidates, within_prefix_band};
pub use subgroups::{recover_subgroups, SubgroupRecovery};
