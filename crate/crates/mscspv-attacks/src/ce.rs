//! Conjugacy-extractor attacks.
//!
//! Both exploit the identity u' = z u z^-1: conjugating a probe that
//! commutes with z (or with part of z) by u' produces equations whose
//! solution is z times known material, so z falls out by cancellation.

use std::time::Instant;

use braid_core::{equal, BraidError, BraidWord};
use centralizer::{
    approx_intersection, mscsp_solve_with_centralizer, sample_centralizer, verify_commutes,
    SampleOptions, Strategy,
};
use garside_conjugacy::{csp_solve, ConjEquation, CspOutcome, MscspInstance, MscspOutcome};

use aagl_ttp::MSCSPvInstance;

use crate::anchored::{build_middle_map, lookup_short_form};
use crate::config::{AttackConfig, AttackReport, Outcome, StrategyTag};
use crate::pairs::{central_adjust, enumerate_middles, middle_candidates};

/// Subgroup scenario: z lies in the subgroup generated by `r_words`.
/// Probes from the centralizer of that subgroup commute with z, so
/// conjugating them by u' = z*u*z^-1 equals conjugation by z*u; solving
/// the resulting system for o = z*u gives z = (o^-1 u')^-1.
pub fn attack_ce_subgroup(
    inst: &MSCSPvInstance,
    r_words: &[BraidWord],
    cfg: &AttackConfig,
) -> Result<AttackReport, BraidError> {
    let started = Instant::now();
    let mut report = AttackReport::new(StrategyTag::CeSubgroup, cfg.clone());
    let n = inst.n;
    let Some(u_pub) = inst.elements.first().map(|e| e.y.clone()) else {
        report.notes.push("empty instance".into());
        report.wall_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    };
    if r_words.is_empty() {
        report.notes.push("no subgroup generators supplied".into());
        report.wall_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let mut samples = Vec::new();
    for r in r_words {
        let opts = SampleOptions {
            budget: cfg.centralizer_budget,
            sss_budget: cfg.sss_budget,
            seed: cfg.seed,
            ..Default::default()
        };
        let s = sample_centralizer(&r.with_strands(n)?, Strategy::SssLoops, &opts)?;
        report.counters.centralizer_sizes.push(s.elements.len());
        samples.push(s);
    }
    let s_approx = approx_intersection(&samples, cfg.centralizer_budget)?;

    let map = build_middle_map(&middle_candidates(n, cfg));
    let depth = (inst.g_z as usize).max(cfg.g_a);
    // the coset offset left after extraction lives in the probe's
    // centralizer; search the declared subgroup extended by the center
    // (and, on the single-probe path, by the probe itself)
    let mut corr_gens = r_words.to_vec();
    corr_gens.push(BraidWord::delta_pow(n, 2));

    // Single-probe path: a probe mixing many sampled centralizer elements
    // has an essentially cyclic centralizer, so one extractor equation
    // already pins z down to the declared subgroup times a probe power.
    // Probes built from few elements leave a larger ambient centralizer
    // whose offsets the subgroup walk cannot cancel.
    let mut mixed = Vec::new();
    {
        let mut acc = BraidWord::identity(n);
        for e in s_approx.elements.iter().take(8) {
            acc = acc.product(e)?.free_reduced();
            mixed.push(acc.clone());
        }
        mixed.reverse();
        mixed.truncate(3);
    }
    for probe in &mixed {
        report.counters.candidates_tried += 1;
        if probe.free_reduced().is_empty_word() || verify_commutes(probe, &u_pub, false)? {
            continue;
        }
        let y_ce = BraidWord::conjugate(&u_pub, probe)?;
        report.counters.cdp_calls += 1;
        let CspOutcome::Found(o) = csp_solve(probe, &y_ce, cfg.cdp_budget)? else {
            continue;
        };
        let z0 = u_pub.inverse().product(&o)?;
        let mut gens = corr_gens.clone();
        gens.push(probe.clone());
        let corrections = subgroup_words(n, &gens, depth)?;
        'single: for c in &corrections {
            report.counters.candidates_tried += 1;
            let z_cand = z0.product(c)?;
            let z_inv = z_cand.inverse();
            let mut eqs = Vec::new();
            for e in &inst.elements {
                let x_raw = BraidWord::conjugate(&z_inv, &e.y)?;
                let Some(m) = lookup_short_form(&map, &x_raw) else {
                    continue 'single;
                };
                let y = central_adjust(&m, &e.y).expect("same class");
                if !equal(&BraidWord::conjugate(&z_cand, &m)?, &y)? {
                    continue 'single;
                }
                eqs.push(ConjEquation { x: m, y });
            }
            report.pairs = vec![(probe.clone(), y_ce.clone())];
            report.mscsp_built = Some(MscspInstance { n, equations: eqs });
            report.candidate_z = Some(z_cand);
            report.outcome = Outcome::Solved;
            report
                .notes
                .push("single mixed-probe extraction succeeded".into());
            report.wall_ms = started.elapsed().as_millis() as u64;
            return Ok(report);
        }
    }

    let mut equations = Vec::new();
    let mut skipped = 0usize;
    for probe in &s_approx.elements {
        report.counters.candidates_tried += 1;
        // a probe commuting with u' gives the fixed-point equation o*s=s*o,
        // which constrains nothing; skip it
        if verify_commutes(probe, &u_pub, false)? {
            skipped += 1;
            continue;
        }
        let y = BraidWord::conjugate(&u_pub, probe)?;
        equations.push(ConjEquation {
            x: probe.clone(),
            y,
        });
        if equations.len() >= cfg.t.max(2) {
            break;
        }
    }
    if skipped > 0 {
        report.notes.push(format!("{skipped} probes commuted with the target; skipped"));
    }
    if equations.is_empty() {
        report.notes.push("every probe commuted with the target".into());
        report.wall_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let system = MscspInstance { n, equations };
    match mscsp_solve_with_centralizer(&system, cfg.sss_budget, cfg.correction_budget)? {
        MscspOutcome::Found(o) => {
            // any solution is o = z*u times a common centralizer element of
            // the probes, so z = (o^-1 u')^-1 only up to that coset; walk
            // the subgroup z is known to lie in and accept the element that
            // makes every published word short
            let z0 = u_pub.inverse().product(&o)?;
            report.pairs = system
                .equations
                .iter()
                .map(|e| (e.x.clone(), e.y.clone()))
                .collect();
            report.mscsp_built = Some(MscspInstance {
                n,
                equations: system.equations.clone(),
            });
            report.candidate_z = Some(z0.clone());
            let corrections = subgroup_words(n, &corr_gens, depth)?;
            'outer: for c in &corrections {
                report.counters.candidates_tried += 1;
                let z_cand = z0.product(c)?;
                let z_inv = z_cand.inverse();
                let mut eqs = Vec::new();
                for e in &inst.elements {
                    let x_raw = BraidWord::conjugate(&z_inv, &e.y)?;
                    let Some(m) = lookup_short_form(&map, &x_raw) else {
                        continue 'outer;
                    };
                    let y = central_adjust(&m, &e.y).expect("same class");
                    if !equal(&BraidWord::conjugate(&z_cand, &m)?, &y)? {
                        continue 'outer;
                    }
                    eqs.push(ConjEquation { x: m, y });
                }
                report.mscsp_built = Some(MscspInstance { n, equations: eqs });
                report.candidate_z = Some(z_cand);
                report.outcome = Outcome::Solved;
                break;
            }
            if report.outcome != Outcome::Solved {
                report.outcome = Outcome::Partial;
                report
                    .notes
                    .push("extractor solved but no coset element made the words short".into());
            }
        }
        MscspOutcome::NotFound { .. } => {
            report.mscsp_built = Some(system);
            report.notes.push("extractor system unsolved".into());
        }
    }
    report.wall_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// Freely reduced products of the supplied generators (and inverses) up to
/// the given length, identity first, deduplicated by normal form.
fn subgroup_words(
    n: usize,
    gens: &[BraidWord],
    max_len: usize,
) -> Result<Vec<BraidWord>, BraidError> {
    use std::collections::BTreeSet;
    let mut seen: BTreeSet<braid_core::GarsideNormalForm> = BTreeSet::new();
    let mut out = vec![BraidWord::identity(n)];
    seen.insert(braid_core::normal_form(&out[0]));
    let mut frontier = out.clone();
    let mut signed: Vec<BraidWord> = Vec::new();
    for g in gens {
        let g = g.with_strands(n)?;
        signed.push(g.inverse());
        signed.push(g);
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for s in &signed {
                let cand = w.product(s)?;
                if seen.insert(braid_core::normal_form(&cand)) {
                    out.push(cand.clone());
                    next.push(cand);
                }
            }
            if out.len() > 4096 {
                break;
            }
        }
        frontier = next;
        if out.len() > 4096 {
            break;
        }
    }
    Ok(out)
}

/// Partial-factor scenario: a probe commutes with only a prefix factor of
/// z. Solving the extractor equation then yields z times the inverse of
/// the unknown suffix, whose short remainder is brute-forced; on failure
/// the partially unwound instance is fed back in.
pub fn attack_ce_partial(
    inst: &MSCSPvInstance,
    cfg: &AttackConfig,
) -> Result<AttackReport, BraidError> {
    let started = Instant::now();
    let mut report = AttackReport::new(StrategyTag::CePartial, cfg.clone());
    let n = inst.n;
    if inst.elements.is_empty() {
        report.notes.push("empty instance".into());
        report.wall_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    }
    let map = build_middle_map(&middle_candidates(n, cfg));
    let mut residuals = vec![BraidWord::identity(n)];
    residuals.extend(enumerate_middles(n, cfg.g_a));

    let mut ys: Vec<BraidWord> = inst.elements.iter().map(|e| e.y.clone()).collect();
    let mut prefix = BraidWord::identity(n);

    for iteration in 0..cfg.max_iterations {
        let u_pub = ys[0].clone();
        let probes = enumerate_middles(n, 2.min(cfg.g_a.max(1)));
        let mut advanced = false;
        for probe in &probes {
            report.counters.candidates_tried += 1;
            if verify_commutes(probe, &u_pub, false)? {
                continue;
            }
            let y_ce = BraidWord::conjugate(&u_pub, probe)?;
            report.counters.cdp_calls += 1;
            let CspOutcome::Found(o) = csp_solve(probe, &y_ce, cfg.cdp_budget)? else {
                continue;
            };
            // o approximates z*u*zbar^-1, so u'^-1*o inverts to z*zbar^-1
            let z_t = u_pub.inverse().product(&o)?;
            for r in &residuals {
                let z_cand = prefix.product(&z_t)?.product(r)?;
                let z_inv = z_cand.inverse();
                let mut equations = Vec::new();
                let mut ok = true;
                for e in &inst.elements {
                    let x_raw = BraidWord::conjugate(&z_inv, &e.y)?;
                    let Some(m) = lookup_short_form(&map, &x_raw) else {
                        ok = false;
                        break;
                    };
                    let y = central_adjust(&m, &e.y).expect("same class");
                    if !equal(&BraidWord::conjugate(&z_cand, &m)?, &y)? {
                        ok = false;
                        break;
                    }
                    equations.push(ConjEquation { x: m, y });
                }
                if ok {
                    report.notes.push(format!(
                        "accepted at iteration {iteration} with residual of {} letters",
                        r.artin_len()
                    ));
                    report.mscsp_built = Some(MscspInstance { n, equations });
                    report.candidate_z = Some(z_cand);
                    report.outcome = Outcome::Solved;
                    report.wall_ms = started.elapsed().as_millis() as u64;
                    return Ok(report);
                }
            }
            // no residual closed the gap: unwind by the recovered partial
            // factor and iterate on the remainder
            if !z_t.free_reduced().is_empty_word() {
                let z_t_inv = z_t.inverse();
                for y in &mut ys {
                    *y = BraidWord::conjugate(&z_t_inv, y)?;
                }
                prefix = prefix.product(&z_t)?;
                report
                    .notes
                    .push(format!("iteration {iteration}: unwound a partial factor"));
                advanced = true;
                break;
            }
        }
        if !advanced {
            report.notes.push(format!("iteration {iteration}: no usable probe"));
            break;
        }
    }
    if !prefix.free_reduced().is_empty_word() {
        report.candidate_z = Some(prefix);
        report.outcome = Outcome::Partial;
        report.notes.push("returning accumulated partial factor".into());
    } else {
        report.notes.push("no partial factor recovered".into());
    }
    report.wall_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}
