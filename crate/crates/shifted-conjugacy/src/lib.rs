//! Shift-based braid machinery: the shifted conjugacy operator, extractor
//! transforms that cancel the hidden left factor of decomposition
//! equations, delta-lifts that turn shifted unknowns into plain
//! conjugators, verified abelian correction subgroups, best-first solvers
//! for the simultaneous shifted decomposition problem and its hidden-c
//! variant, and the key-recovery attack on shifted-conjugacy
//! authentication under nonce reuse.

mod dsc;
mod mssdp;
mod mssdpv;
mod ops;

pub use dsc::{dsc_attack, unwind_rs, DscReport, DscScenario};
pub use mssdp::{
    solve_mssdp, solve_mssdp_constrained, verify_mssdp_solution, MssdpConfig, MssdpReport,
    MSSDPInstance, SdpEquation, SdpSecrets, SolveOutcome,
};
pub use mssdpv::{solve_mssdpv, verify_mssdpv_solution, MSSDPvInstance, MssdpvSecrets};
pub use ops::{
    ce_middle, ce_target, correction_subgroup, delta_small, lift_by_delta, sdp_compose,
    shifted_conjugate,
};
