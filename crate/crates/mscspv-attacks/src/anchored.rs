//! The centralizer attack and its untagged variant.
//!
//! Both share an anchored search: guess a short middle element for one
//! published word, transport the conjugacy solution to every other word,
//! and accept the guess only when all of them simultaneously become short.
//! The accepted assignment yields an exact simultaneous-conjugacy system
//! together with a verified solution.

use std::collections::BTreeMap;
use std::time::Instant;

use braid_core::{
    equal, normal_form, word_length, BraidError, BraidWord, LengthKind, Permutation,
};
use centralizer::{
    mscsp_solve_with_centralizer, sample_centralizer, SampleOptions, Strategy,
};
use garside_conjugacy::{csp_solve, ConjEquation, CspOutcome, MscspInstance, MscspOutcome};

use aagl_ttp::{Family, MSCSPvInstance};

use crate::config::{AttackConfig, AttackReport, Outcome, StrategyTag};
use crate::pairs::{
    central_adjust, collect_pairs, middle_candidates, within_prefix_band,
};

/// Map from the central-power-parity and factor sequence of a normal form
/// to the shortest enumerated word with that form modulo Delta^2.
pub type MiddleMap = BTreeMap<(i64, Vec<Permutation>), BraidWord>;

pub fn build_middle_map(middles: &[BraidWord]) -> MiddleMap {
    let mut map = MiddleMap::new();
    for m in middles {
        let nf = normal_form(m);
        map.entry((nf.p.rem_euclid(2), nf.factors)).or_insert_with(|| m.clone());
    }
    map
}

/// The shortest known word equal to x modulo the central Delta^2, if one
/// was enumerated.
pub fn lookup_short_form(map: &MiddleMap, x: &BraidWord) -> Option<BraidWord> {
    let nf = normal_form(x);
    map.get(&(nf.p.rem_euclid(2), nf.factors)).cloned()
}

struct Assignment {
    g: BraidWord,
    equations: Vec<ConjEquation>,
    score: usize,
}

/// Check one conjugator candidate against every target: all of them must
/// become short under it. Returns the exact equation system on success.
fn try_assignment(
    g: &BraidWord,
    targets: &[(BraidWord, Option<Family>)],
    map: &MiddleMap,
) -> Result<Option<Assignment>, BraidError> {
    let g_inv = g.inverse();
    let mut equations = Vec::with_capacity(targets.len());
    let mut middles = Vec::with_capacity(targets.len());
    for (b, fam) in targets {
        let x_raw = BraidWord::conjugate(&g_inv, b)?;
        let Some(m) = lookup_short_form(map, &x_raw) else {
            return Ok(None);
        };
        let y = central_adjust(&m, b).expect("same class modulo the center");
        if !equal(&BraidWord::conjugate(g, &m)?, &y)? {
            return Ok(None);
        }
        equations.push(ConjEquation { x: m.clone(), y });
        middles.push((m, *fam));
    }
    // tagged instances carry extra structure: the two hidden families must
    // commute exactly and live on generator indices at distance >= 2
    for (mw, fw) in &middles {
        for (mv, fv) in &middles {
            if *fw == Some(Family::W) && *fv == Some(Family::V) {
                if !equal(&mw.product(mv)?, &mv.product(mw)?)? {
                    return Ok(None);
                }
                for a in mw.letters() {
                    for b in mv.letters() {
                        if (a.abs() - b.abs()).abs() < 2 {
                            return Ok(None);
                        }
                    }
                }
            }
        }
    }
    let score = word_length(g, LengthKind::ArtinLetters);
    Ok(Some(Assignment {
        g: g.clone(),
        equations,
        score,
    }))
}

/// Middle words each target reduces to under the candidate conjugator,
/// or None when some target does not become short or the family
/// constraints fail. All conjugation happens in permutation-factor
/// arithmetic; a successful map lookup already certifies the exact
/// centrally-adjusted equation, because normal forms agreeing modulo
/// Delta^2 with equal exponent-sum defect differ by exactly the central
/// power the adjustment removes.
fn middles_under(
    u: &BraidWord,
    target_nfs: &[braid_core::GarsideNormalForm],
    families: &[Option<Family>],
    map: &MiddleMap,
    transpositions: &[Permutation],
) -> Result<Option<Vec<BraidWord>>, BraidError> {
    let mut middles = Vec::with_capacity(target_nfs.len());
    for nf in target_nfs {
        let mut cur = nf.clone();
        for &l in u.letters() {
            let s = &transpositions[(l.unsigned_abs() - 1) as usize];
            cur = if l > 0 {
                braid_core::conjugate_nf_by_simple(&cur, s)
            } else {
                braid_core::conjugate_nf_by_simple_inv(&cur, s)
            };
        }
        let Some(m) = map.get(&(cur.p.rem_euclid(2), cur.factors)) else {
            return Ok(None);
        };
        middles.push(m.clone());
    }
    // tagged instances carry extra structure: the two hidden families must
    // commute exactly and live on generator indices at distance >= 2
    for (mw, fw) in middles.iter().zip(families) {
        for (mv, fv) in middles.iter().zip(families) {
            if *fw == Some(Family::W) && *fv == Some(Family::V) {
                if !equal(&mw.product(mv)?, &mv.product(mw)?)? {
                    return Ok(None);
                }
                for a in mw.letters() {
                    for b in mv.letters() {
                        if (a.abs() - b.abs()).abs() < 2 {
                            return Ok(None);
                        }
                    }
                }
            }
        }
    }
    Ok(Some(middles))
}

/// Exhaustive search over reduced words u of artin length at most
/// `max_len` for conjugators that turn the anchor into one of the
/// enumerated short middles exactly: u^-1 * (b adjusted by a central
/// power) * u = m. The published conjugator-length bound makes this
/// search complete for the secret conjugator, which pins the solution
/// coset that also contains a short element and so breaks the symmetry
/// among index-shifted middle assignments.
fn short_conjugators(
    anchor_b: &BraidWord,
    middles: &[BraidWord],
    max_len: usize,
    node_budget: usize,
) -> Vec<BraidWord> {
    let n = anchor_b.strands();
    let unit = crate::pairs::exp_delta_sq(n) as i64;
    let nf_b = normal_form(anchor_b);
    let exp_b = anchor_b.exponent_sum();
    let mut target_exps: Vec<i64> = middles
        .iter()
        .map(|m| m.exponent_sum())
        .filter(|e| (exp_b - e).rem_euclid(unit) == 0)
        .collect();
    target_exps.sort();
    target_exps.dedup();

    let short_forms: std::collections::HashSet<braid_core::GarsideNormalForm> =
        middles.iter().map(normal_form).collect();
    let inf_lo = short_forms.iter().map(|f| f.inf()).min().unwrap_or(0);
    let inf_hi = short_forms.iter().map(|f| f.inf()).max().unwrap_or(0);
    let sup_lo = short_forms.iter().map(|f| f.sup()).min().unwrap_or(0);
    let sup_hi = short_forms.iter().map(|f| f.sup()).max().unwrap_or(0);
    let transpositions: Vec<Permutation> =
        (1..n).map(|i| Permutation::transposition(n, i)).collect();

    // conjugation by one generator moves inf and sup by at most one each,
    // so a branch too far from the target band cannot reach it in the
    // remaining depth
    let reachable = |nf: &braid_core::GarsideNormalForm, left: usize| -> bool {
        let need_inf = if nf.inf() < inf_lo {
            inf_lo - nf.inf()
        } else {
            (nf.inf() - inf_hi).max(0)
        };
        let need_sup = if nf.sup() < sup_lo {
            sup_lo - nf.sup()
        } else {
            (nf.sup() - sup_hi).max(0)
        };
        need_inf.max(need_sup) <= left as i64
    };

    let mut out = Vec::new();
    let mut nodes = 0usize;
    for e in target_exps {
        let j = (exp_b - e) / unit;
        let mut root = nf_b.clone();
        root.p -= 2 * j;
        // depth-first over free-reduced words; each edge conjugates the
        // running normal form by a single generator in factor arithmetic
        let mut stack: Vec<(Vec<i32>, braid_core::GarsideNormalForm)> = vec![(Vec::new(), root)];
        while let Some((u, cur)) = stack.pop() {
            nodes += 1;
            if nodes > node_budget {
                return out;
            }
            if short_forms.contains(&cur) {
                out.push(BraidWord::new(n, u.clone()).expect("letters in range"));
            }
            if u.len() >= max_len {
                continue;
            }
            let left = max_len - u.len() - 1;
            for i in 1..n as i32 {
                for l in [i, -i] {
                    if u.last() == Some(&-l) {
                        continue;
                    }
                    let s = &transpositions[(i - 1) as usize];
                    let next = if l > 0 {
                        braid_core::conjugate_nf_by_simple(&cur, s)
                    } else {
                        braid_core::conjugate_nf_by_simple_inv(&cur, s)
                    };
                    if !reachable(&next, left) {
                        continue;
                    }
                    let mut u2 = u.clone();
                    u2.push(l);
                    stack.push((u2, next));
                }
            }
        }
    }
    // ascending (length, letters): the first candidate that passes the full
    // assignment check is the selection-rule minimum
    out.sort_by(|a, b| {
        (a.artin_len(), a.letters()).cmp(&(b.artin_len(), b.letters()))
    });
    out
}

/// Node budget after which the bounded conjugator search gives up and the
/// attack falls back to summit-set machinery.
const SHORT_SEARCH_NODE_BUDGET: usize = 4_000_000;

/// Anchored middle-element search shared by the tagged and untagged
/// attacks. `targets` are the published words (with family tags when
/// known); `extras` are centralizer-sample elements that contribute
/// additional equations when they also become short.
fn anchored_attack(
    n: usize,
    g_z: usize,
    targets: &[(BraidWord, Option<Family>)],
    extras: &[BraidWord],
    cfg: &AttackConfig,
    report: &mut AttackReport,
) -> Result<Option<(BraidWord, MscspInstance)>, BraidError> {
    let middles = middle_candidates(n, cfg);
    let map = build_middle_map(&middles);
    let (anchor_b, _) = &targets[0];

    let mut best: Option<Assignment> = None;
    report.counters.o1 += (targets.len() + middles.len()) as u64 + 1;

    // Step 0: complete bounded search for a conjugator no longer than the
    // published bound. Several middle assignments can each explain the data
    // with a solution coset of short conjugators; since the secret is
    // drawn uniformly from reduced words of exactly the published bound,
    // the posterior weight of an assignment is the number of such words in
    // its coset, so the assignment with the most full-length solutions is
    // the maximum-likelihood choice.
    let target_nfs: Vec<braid_core::GarsideNormalForm> =
        targets.iter().map(|(b, _)| normal_form(b)).collect();
    let families: Vec<Option<Family>> = targets.iter().map(|(_, f)| *f).collect();
    let transpositions: Vec<Permutation> =
        (1..n).map(|i| Permutation::transposition(n, i)).collect();
    let mut groups: BTreeMap<Vec<Vec<i32>>, (usize, BraidWord, Vec<BraidWord>)> = BTreeMap::new();
    for u in short_conjugators(anchor_b, &middles, g_z, SHORT_SEARCH_NODE_BUDGET) {
        report.counters.candidates_tried += 1;
        let Some(ms) = middles_under(&u, &target_nfs, &families, &map, &transpositions)? else {
            continue;
        };
        let key: Vec<Vec<i32>> = ms.iter().map(|m| m.letters().to_vec()).collect();
        let full_length = (u.artin_len() == g_z) as usize;
        groups
            .entry(key)
            .and_modify(|(count, _, _)| *count += full_length)
            .or_insert((full_length, u, ms));
    }
    // posterior ties between assignments are broken in favor of the wider
    // family separation: rival frames obtained by index shifts must move
    // letters toward the gap between the two families
    let margin = |ms: &[BraidWord]| -> i32 {
        let mut best = i32::MAX;
        for (m, f) in ms.iter().zip(&families) {
            if *f != Some(Family::W) {
                continue;
            }
            for (m2, f2) in ms.iter().zip(&families) {
                if *f2 != Some(Family::V) {
                    continue;
                }
                for a in m.letters() {
                    for b in m2.letters() {
                        best = best.min((a.abs() - b.abs()).abs());
                    }
                }
            }
        }
        if best == i32::MAX {
            0
        } else {
            best
        }
    };
    // degenerate instances publish words that are already short; the empty
    // conjugator then explains the data with no scrambling at all and the
    // full-length posterior count (which assumes a secret of exactly the
    // published bound) does not apply
    let mut chosen: Option<(usize, i32, Vec<Vec<i32>>, BraidWord, Vec<BraidWord>)> = groups
        .iter()
        .find(|(_, (_, u, _))| u.is_empty_word())
        .map(|(key, (count, u, ms))| (*count, margin(ms), key.clone(), u.clone(), ms.clone()));
    for (key, (count, u, ms)) in groups {
        if chosen.as_ref().is_some_and(|(_, _, _, u0, _)| u0.is_empty_word()) {
            break;
        }
        let sep = margin(&ms);
        let better = match &chosen {
            None => true,
            Some((c0, s0, k0, u0, _)) => {
                (count, sep) > (*c0, *s0)
                    || ((count, sep) == (*c0, *s0)
                        && (u.artin_len(), &key) < (u0.artin_len(), k0))
            }
        };
        if better {
            chosen = Some((count, sep, key, u, ms));
        }
    }
    if let Some((count, _, _, u, ms)) = chosen {
        report.notes.push(format!(
            "conjugator found by bounded-length search ({count} full-length solutions)"
        ));
        let equations: Vec<ConjEquation> = ms
            .iter()
            .zip(targets)
            .map(|(m, (b, _))| {
                let y = central_adjust(m, b).expect("same class modulo the center");
                ConjEquation { x: m.clone(), y }
            })
            .collect();
        let score = word_length(&u, LengthKind::ArtinLetters);
        best = Some(Assignment {
            g: u,
            equations,
            score,
        });
    }

    if best.is_none() {
        for a in &middles {
            report.counters.candidates_tried += 1;
            let Some(b_adj) = central_adjust(a, anchor_b) else {
                continue;
            };
            if garside_conjugacy::lambda_invariant(a)
                != garside_conjugacy::lambda_invariant(&b_adj)
            {
                continue;
            }
            report.counters.cdp_calls += 1;
            let CspOutcome::Found(g) = csp_solve(a, &b_adj, cfg.cdp_budget)? else {
                continue;
            };
            if let Some(asg) = try_assignment(&g, targets, &map)? {
                if best.as_ref().map_or(true, |b| asg.score < b.score) {
                    best = Some(asg);
                }
            }
        }
    }

    let Some(mut asg) = best else {
        return Ok(None);
    };
    // opportunistic extra equations from centralizer-sample elements that
    // the candidate also makes short
    let g_inv = asg.g.inverse();
    for b in extras {
        if asg.equations.len() >= targets.len() + cfg.t {
            break;
        }
        let x_raw = BraidWord::conjugate(&g_inv, b)?;
        if let Some(m) = lookup_short_form(&map, &x_raw) {
            let y = central_adjust(&m, b).expect("same class modulo the center");
            if !asg.equations.iter().any(|e| e.x == m) {
                asg.equations.push(ConjEquation { x: m, y });
            }
        }
    }
    let inst = MscspInstance {
        n,
        equations: asg.equations,
    };
    Ok(Some((asg.g, inst)))
}

/// The tagged centralizer attack: builds centralizer samples of one word
/// per family from the opposite family's public elements, then runs the
/// anchored middle search over both families' published words.
pub fn attack_centralizer(
    inst: &MSCSPvInstance,
    cfg: &AttackConfig,
) -> Result<AttackReport, BraidError> {
    let started = Instant::now();
    let mut report = AttackReport::new(StrategyTag::Centralizer, cfg.clone());
    let n = inst.n;

    let w_elems: Vec<BraidWord> = inst.family(Family::W).cloned().collect();
    let v_elems: Vec<BraidWord> = inst.family(Family::V).cloned().collect();
    if w_elems.is_empty() || v_elems.is_empty() {
        report.notes.push("instance is missing a family".into());
        report.wall_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    }

    // Step A: centralizer samples of one representative per family, built
    // from products of the opposite family's public elements
    let mut extras: Vec<BraidWord> = Vec::new();
    for (u, opposite) in [(&w_elems[0], &v_elems), (&v_elems[0], &w_elems)] {
        let opts = SampleOptions {
            budget: cfg.centralizer_budget,
            sss_budget: cfg.sss_budget,
            seed: cfg.seed,
            mod_delta_sq: true,
            aux_public: opposite.clone(),
            ..Default::default()
        };
        let sample = sample_centralizer(u, Strategy::PublicProducts, &opts)?;
        report.counters.centralizer_sizes.push(sample.elements.len());
        extras.extend(sample.elements);
    }
    if cfg.prefix_bound {
        let mut kept = Vec::new();
        for b in extras {
            if within_prefix_band(&b, inst.g_z, cfg.g_a)? {
                kept.push(b);
            }
        }
        extras = kept;
    }

    // Step B: anchored middle search over all published words
    let targets: Vec<(BraidWord, Option<Family>)> = inst
        .elements
        .iter()
        .map(|e| (e.y.clone(), Some(e.family)))
        .collect();
    if let Some((g, system)) = anchored_attack(n, inst.g_z as usize, &targets, &extras, cfg, &mut report)? {
        report.pairs = system
            .equations
            .iter()
            .map(|e| (e.x.clone(), e.y.clone()))
            .collect();
        report.mscsp_built = Some(system);
        report.candidate_z = Some(g);
        report.outcome = Outcome::Solved;
        report.wall_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    }

    // fallback: greedy first-match pairing plus a correction-walk solve
    fallback_pair_solve(n, &targets, &extras, cfg, &mut report)?;
    report.wall_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// The untagged variant: intersect centralizer samples of all published
/// words into one commuting approximation Z, then run the same anchored
/// search without family structure.
pub fn attack_general_mscspv(
    inst: &MSCSPvInstance,
    cfg: &AttackConfig,
) -> Result<AttackReport, BraidError> {
    let started = Instant::now();
    let mut report = AttackReport::new(StrategyTag::General, cfg.clone());
    let n = inst.n;
    let ys: Vec<BraidWord> = inst.elements.iter().map(|e| e.y.clone()).collect();
    if ys.is_empty() {
        report.notes.push("empty instance".into());
        report.wall_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let mut samples = Vec::new();
    for (i, y) in ys.iter().enumerate() {
        let aux: Vec<BraidWord> = ys
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, w)| w.clone())
            .collect();
        let opts = SampleOptions {
            budget: cfg.centralizer_budget,
            sss_budget: cfg.sss_budget,
            seed: cfg.seed,
            mod_delta_sq: true,
            aux_public: aux,
            ..Default::default()
        };
        let s = sample_centralizer(y, Strategy::PublicProducts, &opts)?;
        report.counters.centralizer_sizes.push(s.elements.len());
        samples.push(s);
    }
    let z_approx = centralizer::approx_intersection(&samples, cfg.centralizer_budget)?;
    if z_approx.elements.is_empty() {
        report.notes.push("empty commuting approximation Z".into());
    }
    let mut extras = z_approx.elements;
    if cfg.prefix_bound {
        let mut kept = Vec::new();
        for b in extras {
            if within_prefix_band(&b, inst.g_z, cfg.g_a)? {
                kept.push(b);
            }
        }
        extras = kept;
    }

    let targets: Vec<(BraidWord, Option<Family>)> =
        ys.iter().map(|y| (y.clone(), None)).collect();
    if let Some((g, system)) = anchored_attack(n, inst.g_z as usize, &targets, &extras, cfg, &mut report)? {
        report.pairs = system
            .equations
            .iter()
            .map(|e| (e.x.clone(), e.y.clone()))
            .collect();
        report.mscsp_built = Some(system);
        report.candidate_z = Some(g);
        report.outcome = Outcome::Solved;
        report.wall_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    }
    fallback_pair_solve(n, &targets, &extras, cfg, &mut report)?;
    report.wall_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// Greedy pairing fallback: first conjugate middle per candidate, one
/// joint solve, equations that fail are dropped once.
fn fallback_pair_solve(
    n: usize,
    targets: &[(BraidWord, Option<Family>)],
    extras: &[BraidWord],
    cfg: &AttackConfig,
    report: &mut AttackReport,
) -> Result<(), BraidError> {
    let middles = middle_candidates(n, cfg);
    let mut bs: Vec<BraidWord> = targets.iter().map(|(b, _)| b.clone()).collect();
    bs.extend_from_slice(extras);
    let want = targets.len().max(cfg.t);
    let pairs = collect_pairs(&bs, &middles, cfg, want, &mut report.counters)?;
    if pairs.is_empty() {
        report.notes.push("no conjugate pairs found".into());
        return Ok(());
    }
    report.pairs = pairs.clone();
    let mut equations: Vec<ConjEquation> = pairs
        .iter()
        .map(|(a, b)| ConjEquation {
            x: a.clone(),
            y: b.clone(),
        })
        .collect();
    for _attempt in 0..2 {
        let system = MscspInstance {
            n,
            equations: equations.clone(),
        };
        match mscsp_solve_with_centralizer(&system, cfg.sss_budget, cfg.correction_budget)? {
            MscspOutcome::Found(g) => {
                report.candidate_z = Some(g);
                report.mscsp_built = Some(system);
                report.outcome = if equations.len() < targets.len() {
                    Outcome::Partial
                } else {
                    Outcome::Solved
                };
                return Ok(());
            }
            MscspOutcome::NotFound {
                failing_equations, ..
            } => {
                if failing_equations.is_empty() || failing_equations.len() >= equations.len() {
                    break;
                }
                report
                    .notes
                    .push(format!("dropped {} inconsistent pairs", failing_equations.len()));
                let mut idx = 0usize;
                equations.retain(|_| {
                    let keep = !failing_equations.contains(&idx);
                    idx += 1;
                    keep
                });
            }
        }
    }
    report.outcome = Outcome::Partial;
    report.notes.push("pairs found but joint solve failed".into());
    Ok(())
}
