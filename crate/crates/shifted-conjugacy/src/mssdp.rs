//! Shifted decomposition systems and their heuristic solver.
//!
//! An SDP equation is y = w . d(c) . sigma_1 . d(x) with both outer
//! factors hidden. Two equations sharing (w, x) cancel w under the
//! extractor transform y1^-1 y2, leaving a conjugacy equation in d(x);
//! lifting by delta turns the unknown into x itself. Two independent
//! pairs then pin x down up to corrections from an abelian subgroup of
//! the relevant centralizers, which a best-first search walks.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use braid_core::{equal, normal_form, BraidError, BraidWord, GarsideNormalForm};
use garside_conjugacy::{csp_solve, CspOutcome};

use crate::ops::{ce_middle, ce_target, correction_subgroup, lift_by_delta, sdp_compose};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdpEquation {
    pub c: BraidWord,
    pub y: BraidWord,
}

/// Known secrets, carried only in experiment mode for verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdpSecrets {
    pub w: BraidWord,
    pub x: BraidWord,
}

/// A simultaneous system y_i = w . d(c_i) . sigma_1 . d(x) with the c_i
/// public. `n` is the strand count of the base group; equation words live
/// one strand up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MSSDPInstance {
    pub n: usize,
    pub equations: Vec<SdpEquation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secrets: Option<SdpSecrets>,
}

impl MSSDPInstance {
    /// Build an instance from known secrets; the secrets are retained.
    pub fn generate(
        w: &BraidWord,
        x: &BraidWord,
        cs: &[BraidWord],
    ) -> Result<MSSDPInstance, BraidError> {
        let n = cs
            .iter()
            .map(|c| c.strands())
            .chain([w.strands(), x.strands()])
            .max()
            .expect("at least the secrets");
        let mut equations = Vec::with_capacity(cs.len());
        for c in cs {
            equations.push(SdpEquation {
                c: c.with_strands(n)?,
                y: sdp_compose(&w.with_strands(n)?, &c.with_strands(n)?, &x.with_strands(n)?)?,
            });
        }
        Ok(MSSDPInstance {
            n,
            equations,
            secrets: Some(SdpSecrets {
                w: w.with_strands(n)?,
                x: x.with_strands(n)?,
            }),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct MssdpConfig {
    /// Budget for the lifted conjugacy searches.
    pub csp_budget: usize,
    /// Node cap for the best-first correction search.
    pub frontier_budget: usize,
    /// Letter bound for hidden-middle guesses (variant solver).
    pub middle_len: usize,
    /// Letter bound for hidden-c guesses (variant solver).
    pub c_len: usize,
}

impl Default for MssdpConfig {
    fn default() -> Self {
        MssdpConfig {
            csp_budget: 4_000,
            frontier_budget: 1_500,
            middle_len: 1,
            c_len: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveOutcome {
    Solved,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MssdpReport {
    pub outcome: SolveOutcome,
    pub x: Option<BraidWord>,
    pub w: Option<BraidWord>,
    /// Recovered c_i when the variant solver had to guess them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cs: Option<Vec<BraidWord>>,
    /// Best objective value seen (0 on success).
    pub f_best: u64,
    /// Tuples expanded by the correction search.
    pub expanded: usize,
    /// Peak frontier size.
    pub frontier_peak: usize,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl MssdpReport {
    pub(crate) fn failed(notes: Vec<String>) -> Self {
        MssdpReport {
            outcome: SolveOutcome::Failed,
            x: None,
            w: None,
            cs: None,
            f_best: u64::MAX,
            expanded: 0,
            frontier_peak: 0,
            notes,
            wall_ms: 0,
        }
    }

    /// Copy with timing zeroed, for determinism comparisons.
    pub fn normalized(&self) -> Self {
        MssdpReport {
            wall_ms: 0,
            ..self.clone()
        }
    }
}

/// Zero exactly on the identity: canonical length plus the absolute
/// Delta power of the normal form.
pub(crate) fn defect(x: &BraidWord) -> u64 {
    let nf = normal_form(x);
    nf.canonical_length() as u64 + nf.p.unsigned_abs()
}

/// Reconstruction defect of one equation under candidate (w, x): the
/// defect of y^-1 . w . d(c) . sigma_1 . d(x), all widened one strand
/// beyond the equations so d applies to the candidate.
pub(crate) fn equation_defect(
    amb: usize,
    y: &BraidWord,
    w_cand: &BraidWord,
    c: &BraidWord,
    x_cand: &BraidWord,
) -> Result<u64, BraidError> {
    let recon = w_cand
        .with_strands(amb)?
        .product(&c.shift().with_strands(amb)?)?
        .product(&BraidWord::generator(amb, 1)?)?
        .product(&x_cand.shift().with_strands(amb)?)?;
    Ok(defect(&y.with_strands(amb)?.inverse().product(&recon)?))
}

/// Candidate left factor from the first equation: w = y . d(x)^-1 .
/// sigma_1^-1 . d(c)^-1, exact whenever x is exact.
pub(crate) fn left_from_first(
    amb: usize,
    y: &BraidWord,
    c: &BraidWord,
    x_cand: &BraidWord,
) -> Result<BraidWord, BraidError> {
    y.with_strands(amb)?
        .product(&x_cand.shift().inverse().with_strands(amb)?)?
        .product(&BraidWord::generator(amb, -1)?)?
        .product(&c.shift().inverse().with_strands(amb)?)
}

/// Exact check that a claimed (w, x) reproduces every equation of a
/// public-c system.
pub fn verify_mssdp_solution(
    inst: &MSSDPInstance,
    w: &BraidWord,
    x: &BraidWord,
) -> Result<bool, BraidError> {
    let amb = (inst.n + 2).max(w.strands()).max(x.strands() + 1);
    for eq in &inst.equations {
        if equation_defect(amb, &eq.y, w, &eq.c, x)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) struct Frontier {
    pub(crate) heap: BinaryHeap<Reverse<(u64, usize, u64)>>,
    items: Vec<(BraidWord, BraidWord)>,
    visited: BTreeSet<(GarsideNormalForm, GarsideNormalForm)>,
    pub(crate) peak: usize,
}

impl Frontier {
    pub(crate) fn new() -> Self {
        Frontier {
            heap: BinaryHeap::new(),
            items: Vec::new(),
            visited: BTreeSet::new(),
            peak: 0,
        }
    }

    /// Insert unless the (t, u) pair was already queued or expanded.
    pub(crate) fn push(&mut self, f: u64, t: BraidWord, u: BraidWord) -> bool {
        let key = (normal_form(&t), normal_form(&u));
        if !self.visited.insert(key) {
            return false;
        }
        let order = self.items.len() as u64;
        let len = t.artin_len() + u.artin_len();
        self.items.push((t, u));
        self.heap.push(Reverse((f, len, order)));
        self.peak = self.peak.max(self.heap.len());
        true
    }

    pub(crate) fn pop(&mut self) -> Option<(u64, BraidWord, BraidWord)> {
        let Reverse((f, _, order)) = self.heap.pop()?;
        let (t, u) = self.items[order as usize].clone();
        Some((f, t, u))
    }
}

/// Solve a four-equation shifted decomposition system with public c_i.
///
/// Extractor transforms on (y1, y2) and (y3, y4) eliminate w; lifted
/// conjugacy searches give seeds s1', s2'; a best-first walk over the
/// correction subgroups reconciles them into a single x with objective
/// zero, then w falls out of the first equation.
pub fn solve_mssdp(inst: &MSSDPInstance, cfg: &MssdpConfig) -> Result<MssdpReport, BraidError> {
    solve_mssdp_constrained(inst, cfg, false)
}

/// As solve_mssdp, optionally requiring the recovered pair to satisfy
/// x = w^-1 (the shifted-conjugacy shape).
pub fn solve_mssdp_constrained(
    inst: &MSSDPInstance,
    cfg: &MssdpConfig,
    inverse_pair: bool,
) -> Result<MssdpReport, BraidError> {
    let started = Instant::now();
    if inst.equations.len() < 4 {
        return Ok(MssdpReport::failed(vec![format!(
            "need at least 4 equations, got {}",
            inst.equations.len()
        )]));
    }
    let e = &inst.equations;
    if equal(&e[0].c, &e[1].c)? || equal(&e[2].c, &e[3].c)? {
        return Ok(MssdpReport::failed(vec![
            "degenerate: an extractor pair has equal c's, the middle collapses".into(),
        ]));
    }
    let m = inst.n + 1;
    let amb = inst.n + 2;

    let mut seeds = Vec::new();
    for (a, b) in [(0usize, 1usize), (2, 3)] {
        let target = ce_target(&e[a].y, &e[b].y)?.with_strands(m)?;
        let middle = ce_middle(&e[a].c, &e[b].c)?.with_strands(m)?;
        let (lt, lm) = lift_by_delta(&target, &middle)?;
        // the target is x^-1-conjugated from the middle, so the search
        // returns x^-1 times a centralizer element; invert to get the
        // x-candidate, with corrections acting on the left
        match csp_solve(&lm, &lt, cfg.csp_budget)? {
            CspOutcome::Found(s) => seeds.push(s.inverse()),
            CspOutcome::NotConjugate => {
                return Ok(MssdpReport::failed(vec![format!(
                    "lifted equations {a},{b} proved non-conjugate: system unsatisfiable"
                )]))
            }
            CspOutcome::Unknown => {
                return Ok(MssdpReport::failed(vec![format!(
                    "lifted conjugacy search on equations {a},{b} exhausted its budget"
                )]))
            }
        }
    }
    let gens12 = correction_subgroup(&e[0].c, &e[1].c)?;
    let gens34 = correction_subgroup(&e[2].c, &e[3].c)?;

    let objective = |t: &BraidWord, u: &BraidWord| -> Result<u64, BraidError> {
        let mut f = defect(&t.inverse().product(u)?);
        let w_cand = left_from_first(amb, &e[0].y, &e[0].c, t)?;
        if inverse_pair {
            f += defect(&w_cand.product(&t.with_strands(amb)?)?);
        }
        for eq in &e[1..4] {
            f += equation_defect(amb, &eq.y, &w_cand, &eq.c, t)?;
        }
        Ok(f)
    };

    let mut frontier = Frontier::new();
    // the identity is the cheapest coset representative; seed it alongside
    // the conjugacy-search solutions
    let id = BraidWord::identity(m);
    for (t, u) in [
        (seeds[0].clone(), seeds[1].clone()),
        (id.clone(), id),
    ] {
        let f = objective(&t, &u)?;
        frontier.push(f, t, u);
    }

    let mut expanded = 0usize;
    let mut f_best = u64::MAX;
    let mut report = loop {
        let Some((f, t, u)) = frontier.pop() else {
            break MssdpReport::failed(vec![
                "correction search exhausted every reachable coset".into(),
            ]);
        };
        f_best = f_best.min(f);
        if f == 0 {
            let w_cand = left_from_first(amb, &e[0].y, &e[0].c, &t)?;
            for eq in e.iter() {
                let d = equation_defect(amb, &eq.y, &w_cand, &eq.c, &t)?;
                assert_eq!(d, 0, "zero objective must mean exact equations");
            }
            break MssdpReport {
                outcome: SolveOutcome::Solved,
                x: Some(t),
                w: Some(w_cand),
                cs: None,
                f_best: 0,
                expanded,
                frontier_peak: frontier.peak,
                notes: Vec::new(),
                wall_ms: 0,
            };
        }
        expanded += 1;
        if expanded > cfg.frontier_budget {
            break MssdpReport::failed(vec![format!(
                "frontier budget {} exhausted",
                cfg.frontier_budget
            )]);
        }
        for g in &gens12 {
            let t2 = g.product(&t)?;
            let f2 = objective(&t2, &u)?;
            frontier.push(f2, t2, u.clone());
        }
        for g in &gens34 {
            let u2 = g.product(&u)?;
            let f2 = objective(&t, &u2)?;
            frontier.push(f2, t.clone(), u2);
        }
    };
    if report.outcome == SolveOutcome::Failed {
        report.f_best = f_best;
        report.expanded = expanded;
        report.frontier_peak = frontier.peak;
    }
    report.wall_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}
