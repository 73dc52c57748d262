//! Shared machinery for turning conjugate candidates into an exact
//! simultaneous-conjugacy system.
//!
//! Published words are residues modulo the central Delta^2, so a candidate
//! b that is conjugate to a short word a "up to the center" differs from
//! the true conjugate by a unique central power, recoverable from exponent
//! sums. After that adjustment the pair (a, b) is an exact conjugacy
//! equation.

use braid_core::{prefix_leq, BraidError, BraidWord};
use garside_conjugacy::{cdp, lambda_invariant, CdpOutcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{AttackConfig, Counters, SearchMode};

/// Exponent sum of the central element Delta^2 in B_n.
pub fn exp_delta_sq(n: usize) -> i64 {
    (n * (n - 1)) as i64
}

/// Multiply b by the unique central power making its exponent sum match
/// a's, or None when no such power exists (then a and b cannot be
/// conjugate modulo the center).
pub fn central_adjust(a: &BraidWord, b: &BraidWord) -> Option<BraidWord> {
    let n = b.strands();
    let diff = b.exponent_sum() - a.exponent_sum();
    let unit = exp_delta_sq(n);
    if diff % unit != 0 {
        return None;
    }
    let j = diff / unit;
    Some(
        b.product(&BraidWord::delta_pow(n, -2 * j))
            .expect("same strand count"),
    )
}

/// The cheap band test on centralizer candidates: anything of the form
/// z*a*z^-1 with the published conjugator-length bound g_z and a middle of
/// length at most g_a lies between Delta^(-2 g_z) and Delta^(2 g_z + g_a)
/// in the prefix order.
pub fn within_prefix_band(b: &BraidWord, g_z: u64, g_a: usize) -> Result<bool, BraidError> {
    let n = b.strands();
    let low = BraidWord::delta(n).pow(-2 * g_z as i64);
    let high = BraidWord::delta(n).pow(2 * g_z as i64 + g_a as i64);
    Ok(prefix_leq(&low, b)? && prefix_leq(b, &high)?)
}

/// All freely reduced words of length 1..=max_len over the signed
/// generators of B_n, in deterministic order.
pub fn enumerate_middles(n: usize, max_len: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i32>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if !prefix.is_empty() {
            out.push(BraidWord::new(n, prefix.clone()).expect("letters in range"));
        }
        if prefix.len() == max_len {
            continue;
        }
        // push in reverse so popping yields ascending generator order
        for i in (1..n as i32).rev() {
            for x in [-i, i] {
                if prefix.last() == Some(&-x) {
                    continue;
                }
                let mut next = prefix.clone();
                next.push(x);
                stack.push(next);
            }
        }
    }
    out.sort_by_key(|w| (w.artin_len(), w.letters().to_vec()));
    out
}

/// Middle-element guesses per the configured search mode.
pub fn middle_candidates(n: usize, cfg: &AttackConfig) -> Vec<BraidWord> {
    match cfg.search_mode {
        SearchMode::Exhaustive => enumerate_middles(n, cfg.g_a),
        SearchMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (0..cfg.random_draws)
                .map(|_| {
                    let len = rng.gen_range(1..=cfg.g_a);
                    braid_core::sampling::random_reduced_word(n, len, &mut rng)
                })
                .collect()
        }
    }
}

/// Scan (middle, candidate) combinations for verified conjugate pairs
/// (a, b) with b centrally adjusted, stopping after `want` hits.
pub fn collect_pairs(
    bs: &[BraidWord],
    middles: &[BraidWord],
    cfg: &AttackConfig,
    want: usize,
    counters: &mut Counters,
) -> Result<Vec<(BraidWord, BraidWord)>, BraidError> {
    let mut pairs = Vec::new();
    for b in bs {
        counters.o1 += middles.len() as u64 + 1;
        for a in middles {
            counters.candidates_tried += 1;
            let Some(b_adj) = central_adjust(a, b) else {
                continue;
            };
            // two-stage test: cheap invariant first, full decision second
            if lambda_invariant(a) != lambda_invariant(&b_adj) {
                continue;
            }
            counters.cdp_calls += 1;
            if cdp(a, &b_adj, cfg.cdp_budget)? == CdpOutcome::Conjugate {
                pairs.push((a.clone(), b_adj));
                break;
            }
        }
        if pairs.len() >= want {
            break;
        }
    }
    Ok(pairs)
}
