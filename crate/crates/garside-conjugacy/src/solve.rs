use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use braid_core::{equal, normal_form, BraidError, BraidWord, GarsideNormalForm};

use crate::summit::{cycling_decycling, sss_compute_cached};

/// A system of conjugacy equations y_i = g x_i g^-1 with common unknown g.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MscspInstance {
    pub n: usize,
    pub equations: Vec<ConjEquation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjEquation {
    pub x: BraidWord,
    pub y: BraidWord,
}

/// Cheap conjugacy invariant: (summit inf, summit sup, exponent sum).
/// A mismatch proves non-conjugacy; a match proves nothing.
pub fn lambda_invariant(x: &BraidWord) -> (i64, i64, i64) {
    let (rep, _) = cycling_decycling(x);
    (rep.inf(), rep.sup(), x.exponent_sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CspOutcome {
    /// g with g x g^-1 = y, verified before return.
    Found(BraidWord),
    /// Proved non-conjugate (summit sets are complete and disjoint).
    NotConjugate,
    /// Budget-truncated search; no verdict.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdpOutcome {
    Conjugate,
    NotConjugate,
    Unknown,
}

/// Conjugacy search: find g with g x g^-1 = y.
pub fn csp_solve(x: &BraidWord, y: &BraidWord, budget: usize) -> Result<CspOutcome, BraidError> {
    if x.strands() != y.strands() {
        return Err(BraidError::StrandMismatch(x.strands(), y.strands()));
    }
    if x.exponent_sum() != y.exponent_sum() {
        return Ok(CspOutcome::NotConjugate);
    }
    let (rep_y, cy) = cycling_decycling(y);
    {
        // summit inf/sup mismatch proves non-conjugacy without growing the
        // full summit set
        let (rep_x, _) = cycling_decycling(x);
        if rep_y.inf() != rep_x.inf() || rep_y.sup() != rep_x.sup() {
            return Ok(CspOutcome::NotConjugate);
        }
    }
    let sss = sss_compute_cached(x, budget);
    if rep_y.inf() != sss.summit_inf || rep_y.sup() != sss.summit_sup {
        return Ok(CspOutcome::NotConjugate);
    }
    match sss.conjugator_from_input(&rep_y) {
        Some(cm) => {
            // rep_y = cm x cm^-1 and rep_y = cy y cy^-1
            let g = cy.inverse().product(&cm)?;
            let check = BraidWord::conjugate(&g, x)?;
            debug_assert!(equal(&check, y)?);
            if !equal(&check, y)? {
                return Ok(CspOutcome::Unknown);
            }
            Ok(CspOutcome::Found(g))
        }
        None if sss.truncated => Ok(CspOutcome::Unknown),
        None => Ok(CspOutcome::NotConjugate),
    }
}

/// Conjugacy decision.
pub fn cdp(x: &BraidWord, y: &BraidWord, budget: usize) -> Result<CdpOutcome, BraidError> {
    Ok(match csp_solve(x, y, budget)? {
        CspOutcome::Found(_) => CdpOutcome::Conjugate,
        CspOutcome::NotConjugate => CdpOutcome::NotConjugate,
        CspOutcome::Unknown => CdpOutcome::Unknown,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MscspOutcome {
    /// g verifying every equation, checked before return.
    Found(BraidWord),
    NotFound {
        /// True when some equation was proved unsatisfiable.
        proved_inconsistent: bool,
        /// Indices of equations the best candidate failed.
        failing_equations: Vec<usize>,
    },
}

fn verify_all(g: &BraidWord, inst: &MscspInstance) -> Result<Vec<usize>, BraidError> {
    let mut failing = Vec::new();
    for (i, eq) in inst.equations.iter().enumerate() {
        let c = BraidWord::conjugate(g, &eq.x)?;
        if !equal(&c, &eq.y)? {
            failing.push(i);
        }
    }
    Ok(failing)
}

/// Solve a simultaneous conjugacy system: one conjugacy search on the
/// equation with the smallest summit set, then a breadth-first correction
/// walk over the subgroup generated by `corrections_for(anchor_x)` (which
/// must return a generating set of elements commuting with its argument),
/// in increasing word length.
pub fn mscsp_solve(
    inst: &MscspInstance,
    budget: usize,
    corrections_for: &dyn Fn(&BraidWord) -> Vec<BraidWord>,
    correction_budget: usize,
) -> Result<MscspOutcome, BraidError> {
    if inst.equations.is_empty() {
        return Ok(MscspOutcome::Found(BraidWord::identity(inst.n)));
    }
    // pick the anchor equation by smallest summit set
    let mut anchor = 0usize;
    let mut best_size = usize::MAX;
    for (i, eq) in inst.equations.iter().enumerate() {
        let s = sss_compute_cached(&eq.x, budget);
        let size = s.members.len() + if s.truncated { budget } else { 0 };
        if size < best_size {
            best_size = size;
            anchor = i;
        }
    }
    let eq = &inst.equations[anchor];
    let g0 = match csp_solve(&eq.x, &eq.y, budget)? {
        CspOutcome::Found(g) => g,
        CspOutcome::NotConjugate => {
            return Ok(MscspOutcome::NotFound {
                proved_inconsistent: true,
                failing_equations: vec![anchor],
            })
        }
        CspOutcome::Unknown => {
            return Ok(MscspOutcome::NotFound {
                proved_inconsistent: false,
                failing_equations: vec![anchor],
            })
        }
    };

    let mut best_failing = verify_all(&g0, inst)?;
    if best_failing.is_empty() {
        return Ok(MscspOutcome::Found(g0));
    }

    // breadth-first walk over the correction subgroup
    let mut gens: Vec<BraidWord> = Vec::new();
    for c in corrections_for(&eq.x) {
        gens.push(c.inverse());
        gens.push(c);
    }
    let mut seen: BTreeSet<GarsideNormalForm> = BTreeSet::new();
    let identity = BraidWord::identity(inst.n);
    seen.insert(normal_form(&identity));
    let mut queue: VecDeque<BraidWord> = VecDeque::new();
    queue.push_back(identity);
    let mut visited = 0usize;
    while let Some(c) = queue.pop_front() {
        visited += 1;
        if visited > correction_budget {
            break;
        }
        for gen in &gens {
            let next = c.product(gen)?;
            let nf = normal_form(&next);
            if !seen.insert(nf) {
                continue;
            }
            let candidate = g0.product(&next)?;
            let failing = verify_all(&candidate, inst)?;
            if failing.is_empty() {
                return Ok(MscspOutcome::Found(candidate));
            }
            if failing.len() < best_failing.len() {
                best_failing = failing;
            }
            queue.push_back(next);
        }
    }
    Ok(MscspOutcome::NotFound {
        proved_inconsistent: false,
        failing_equations: best_failing,
    })
}
