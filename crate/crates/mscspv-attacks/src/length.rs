//! Length attack: peel the conjugator off products of published words by
//! greedy single-letter conjugations that shrink a vector of length
//! functions, then turn the peeled prefixes into a conjugator either by
//! pairing the two families or by brute-forcing the short residual.

use std::time::Instant;

use braid_core::{word_length, BraidError, BraidWord};
use centralizer::{approx_intersection, sample_centralizer, SampleOptions, Strategy};
use garside_conjugacy::{cdp, lambda_invariant, CdpOutcome, ConjEquation, MscspInstance};

use aagl_ttp::{Family, MSCSPvInstance};

use crate::anchored::{build_middle_map, lookup_short_form};
use crate::config::{AttackConfig, AttackReport, LengthMode, Outcome, StrategyTag};
use crate::pairs::{central_adjust, enumerate_middles, middle_candidates};

/// Sum plus lexicographic comparison of per-target length vectors.
fn length_vector(
    a: &BraidWord,
    targets: &[BraidWord],
    cfg: &AttackConfig,
) -> Result<(usize, Vec<usize>), BraidError> {
    let a_inv = a.inverse();
    let mut v = Vec::with_capacity(targets.len());
    for t in targets {
        let c = a_inv.product(t)?.product(a)?;
        v.push(word_length(&c, cfg.length_kind));
    }
    Ok((v.iter().sum(), v))
}

/// Greedy peel: extend the prefix by whichever move most decreases the
/// length vector, stopping at a local minimum or below the stop constant.
fn peel(
    targets: &[BraidWord],
    moves: &[BraidWord],
    cfg: &AttackConfig,
    trace: &mut Vec<String>,
) -> Result<BraidWord, BraidError> {
    let n = targets[0].strands();
    let mut a = BraidWord::identity(n);
    let mut current = length_vector(&a, targets, cfg)?;
    let max_steps = 4 * cfg.stop_constant + 4 * cfg.g_a + 32;
    for step in 0..max_steps {
        if current.0 < cfg.stop_constant {
            trace.push(format!("stop at step {step}: sum {} below constant", current.0));
            break;
        }
        let mut best: Option<(BraidWord, (usize, Vec<usize>))> = None;
        for s in moves {
            let cand = a.product(s)?;
            let lv = length_vector(&cand, targets, cfg)?;
            if lv < current && best.as_ref().map_or(true, |(_, b)| lv < *b) {
                best = Some((cand, lv));
            }
        }
        match best {
            Some((cand, lv)) => {
                a = cand;
                current = lv;
            }
            None => {
                trace.push(format!("local minimum at step {step}: sum {}", current.0));
                break;
            }
        }
    }
    Ok(a)
}

fn peel_moves(n: usize, c_r: &[BraidWord]) -> Vec<BraidWord> {
    let mut moves = enumerate_middles(n, 1);
    for c in c_r {
        moves.push(c.clone());
        moves.push(c.inverse());
    }
    moves
}

pub fn attack_length(
    inst: &MSCSPvInstance,
    cfg: &AttackConfig,
) -> Result<AttackReport, BraidError> {
    let started = Instant::now();
    let mut report = AttackReport::new(StrategyTag::Length, cfg.clone());
    let n = inst.n;
    let w_elems: Vec<BraidWord> = inst.family(Family::W).cloned().collect();
    let v_elems: Vec<BraidWord> = inst.family(Family::V).cloned().collect();
    if w_elems.is_empty() || v_elems.is_empty() {
        report.notes.push("instance is missing a family".into());
        report.wall_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    }

    // peel targets: the family's words plus sandwich products, which keep
    // the conjugator on the outside while mixing the hidden words
    let family_targets = |elems: &[BraidWord]| -> Result<Vec<BraidWord>, BraidError> {
        let mut ts = elems.to_vec();
        for i in 1..elems.len() {
            ts.push(elems[0].product(&elems[i])?.product(&elems[0].inverse())?);
        }
        Ok(ts)
    };

    // one centralizer sample of the opposite family's representative; its
    // elements are extra peel moves that cannot destroy correctness
    let mut peeled = Vec::new();
    for (elems, opposite) in [(&w_elems, &v_elems), (&v_elems, &w_elems)] {
        let opts = SampleOptions {
            budget: 16,
            sss_budget: cfg.sss_budget,
            seed: cfg.seed,
            mod_delta_sq: true,
            aux_public: elems.as_slice().to_vec(),
            ..Default::default()
        };
        let sample = sample_centralizer(&opposite[0], Strategy::PublicProducts, &opts)?;
        report.counters.centralizer_sizes.push(sample.elements.len());
        let c_r = approx_intersection(&[sample], 8)?;
        let targets = family_targets(elems)?;
        let moves = peel_moves(n, &c_r.elements);
        report.counters.o1 += (targets.len() * moves.len()) as u64 + 1;
        let a = peel(&targets, &moves, cfg, &mut report.notes)?;
        peeled.push(a);
    }
    let (a_w, a_v) = (peeled[0].clone(), peeled[1].clone());

    match cfg.length_mode {
        LengthMode::ResidualBruteForce => {
            // candidate = peeled prefix times a short residual; accept when
            // every published word becomes short under it
            let map = build_middle_map(&middle_candidates(n, cfg));
            let mut residuals = vec![BraidWord::identity(n)];
            residuals.extend(enumerate_middles(n, cfg.g_a));
            for base in [&a_w, &a_v] {
                for r in &residuals {
                    report.counters.candidates_tried += 1;
                    let z_cand = base.product(&r.inverse())?;
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
                        equations.push(ConjEquation { x: m, y });
                    }
                    if ok {
                        report.mscsp_built = Some(MscspInstance { n, equations });
                        report.candidate_z = Some(z_cand);
                        report.outcome = Outcome::Solved;
                        report.wall_ms = started.elapsed().as_millis() as u64;
                        return Ok(report);
                    }
                }
            }
            report.notes.push("no residual made all words short".into());
        }
        LengthMode::PairBased => {
            // both peeled prefixes approximate z times a short residual,
            // so their mismatch words form conjugacy pairs sharing z
            let zw = a_w.clone();
            let zv = a_v.clone();
            let m1 = zv.inverse().product(&zw)?.free_reduced();
            let y1 = zw.product(&zv.inverse())?.free_reduced();
            let m2 = zw.inverse().product(&zv)?.free_reduced();
            let y2 = zv.product(&zw.inverse())?.free_reduced();
            let mut equations = Vec::new();
            for (m, y) in [(m1, y1), (m2, y2)] {
                if m.is_empty_word() {
                    report.notes.push("trivial pair skipped".into());
                    continue;
                }
                let Some(y_adj) = central_adjust(&m, &y) else {
                    continue;
                };
                if lambda_invariant(&m) != lambda_invariant(&y_adj) {
                    continue;
                }
                report.counters.cdp_calls += 1;
                if cdp(&m, &y_adj, cfg.cdp_budget)? == CdpOutcome::Conjugate {
                    report.pairs.push((m.clone(), y_adj.clone()));
                    equations.push(ConjEquation { x: m, y: y_adj });
                }
            }
            if equations.is_empty() {
                report.notes.push("no verified pairs from peeled prefixes".into());
            } else {
                let system = MscspInstance { n, equations };
                match centralizer::mscsp_solve_with_centralizer(
                    &system,
                    cfg.sss_budget,
                    cfg.correction_budget,
                )? {
                    garside_conjugacy::MscspOutcome::Found(g) => {
                        report.mscsp_built = Some(system);
                        report.candidate_z = Some(g);
                        // the pair system constrains but does not pin z
                        report.outcome = Outcome::Partial;
                    }
                    garside_conjugacy::MscspOutcome::NotFound { .. } => {
                        report.notes.push("pair system unsolved".into());
                    }
                }
            }
        }
    }
    report.wall_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}
