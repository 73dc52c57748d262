//! Finite, verified approximations of centralizers.
//!
//! Every emitted element is checked to commute with its base element
//! (exactly, or modulo the central Delta^2 when the base is a published
//! residue). Three sampling strategies are offered, plus intersection
//! across several bases and a centralizer-backed simultaneous-conjugacy
//! solver.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use braid_core::{
    equal, equal_mod_delta_sq, normal_form, BraidError, BraidWord, GarsideNormalForm,
};
use garside_conjugacy::{mscsp_solve, sss_compute_cached, MscspInstance, MscspOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Loop generators read off the conjugation graph of the super summit
    /// set (spanning tree plus one generator per remaining edge).
    SssLoops,
    /// Products of auxiliary public words that happen to commute with the
    /// base, preferring short ones.
    PublicProducts,
    /// Seeded random products of already-verified elements.
    RandomProducts,
}

/// A finite verified sample of the centralizer of `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerSample {
    pub base: BraidWord,
    /// Additional bases when the sample is an intersection.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_bases: Vec<BraidWord>,
    pub elements: Vec<BraidWord>,
    pub strategy: Strategy,
    pub verified: bool,
    pub seed: u64,
    /// True when commutation was checked modulo Delta^2.
    pub mod_delta_sq: bool,
}

#[derive(Clone, Debug)]
pub struct SampleOptions {
    /// Maximum number of elements kept.
    pub budget: usize,
    pub seed: u64,
    /// Verify commutation modulo the central Delta^2 instead of exactly.
    pub mod_delta_sq: bool,
    /// Auxiliary public words (the opposite-family elements in the
    /// trusted-third-party setting); used by PublicProducts and as extra
    /// seeds for RandomProducts.
    pub aux_public: Vec<BraidWord>,
    /// Member budget for the summit-set computation.
    pub sss_budget: usize,
    /// Number of random product draws for RandomProducts.
    pub random_iters: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            budget: 200,
            seed: 0,
            mod_delta_sq: false,
            aux_public: Vec::new(),
            sss_budget: garside_conjugacy::DEFAULT_SSS_BUDGET,
            random_iters: 200,
        }
    }
}

/// True iff c and u commute under the selected equality.
pub fn verify_commutes(
    c: &BraidWord,
    u: &BraidWord,
    mod_delta_sq: bool,
) -> Result<bool, BraidError> {
    let cu = c.product(u)?;
    let uc = u.product(c)?;
    if mod_delta_sq {
        equal_mod_delta_sq(&cu, &uc)
    } else {
        equal(&cu, &uc)
    }
}

fn sort_dedup(mut words: Vec<BraidWord>, budget: usize) -> Vec<BraidWord> {
    let mut seen: BTreeSet<GarsideNormalForm> = BTreeSet::new();
    words.retain(|w| !w.free_reduced().is_empty_word() && seen.insert(normal_form(w)));
    words.sort_by_key(|w| (w.artin_len(), w.free_reduced().into_letters()));
    words.truncate(budget);
    words
}

fn sss_loop_generators(u: &BraidWord, sss_budget: usize) -> Result<Vec<BraidWord>, BraidError> {
    let n = u.strands();
    let sss = sss_compute_cached(u, sss_budget);
    let t = &sss.to_base;
    let t_inv = t.inverse();
    let mut gens: Vec<BraidWord> = vec![u.clone(), BraidWord::delta_pow(n, 2)];
    // for every edge v --s--> w of the conjugation graph (w = s^-1 v s with
    // both endpoints in the set), the word d_w^-1 s^-1 d_v closes a loop at
    // the base and therefore centralizes it
    for (v, dv) in &sss.members {
        let v_word = v.to_word();
        for s in simple_words(n) {
            let cand = BraidWord::conjugate(&s.inverse(), &v_word)?;
            let cand_nf = normal_form(&cand);
            if let Some(dw) = sss.members.get(&cand_nf) {
                let k = dw.inverse().product(&s.inverse())?.product(dv)?;
                // move from the centralizer of the base representative to
                // the centralizer of u itself
                let gen = t_inv.product(&k)?.product(t)?;
                let gen = gen.free_reduced();
                if !gen.is_empty_word() {
                    gens.push(gen.inverse());
                    gens.push(gen);
                }
            }
        }
    }
    Ok(gens)
}

fn simple_words(n: usize) -> Vec<BraidWord> {
    // non-identity permutation braids; enumerated through the summit-set
    // machinery's own convention: positive words of each permutation
    use std::cell::RefCell;
    use std::collections::HashMap;
    thread_local! {
        static CACHE: RefCell<HashMap<usize, Vec<BraidWord>>> = RefCell::new(HashMap::new());
    }
    CACHE.with(|c| {
        if let Some(v) = c.borrow().get(&n) {
            return v.clone();
        }
        let mut out = Vec::new();
        let mut prefix: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        collect(n, &mut prefix, &mut used, &mut out);
        c.borrow_mut().insert(n, out.clone());
        out
    })
}

fn collect(n: usize, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<BraidWord>) {
    if prefix.len() == n {
        let images: Vec<usize> = prefix.iter().map(|&x| x + 1).collect();
        let p = braid_core::Permutation::try_from(images).expect("valid permutation");
        if !p.is_identity() {
            out.push(BraidWord::new(n, p.to_word()).expect("letters in range"));
        }
        return;
    }
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            prefix.push(i);
            collect(n, prefix, used, out);
            prefix.pop();
            used[i] = false;
        }
    }
}

/// Build a verified sample of the centralizer of u.
pub fn sample_centralizer(
    u: &BraidWord,
    strategy: Strategy,
    opts: &SampleOptions,
) -> Result<CentralizerSample, BraidError> {
    let n = u.strands();
    let candidates: Vec<BraidWord> = match strategy {
        Strategy::SssLoops => sss_loop_generators(u, opts.sss_budget)?,
        Strategy::PublicProducts => {
            let mut cands: Vec<BraidWord> = Vec::new();
            for y in &opts.aux_public {
                cands.push(y.clone());
                cands.push(y.inverse());
            }
            for (i, yi) in opts.aux_public.iter().enumerate() {
                for (j, yj) in opts.aux_public.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    for a in [yi.clone(), yi.inverse()] {
                        for b in [yj.clone(), yj.inverse()] {
                            cands.push(a.product(&b)?);
                        }
                    }
                }
            }
            cands
        }
        Strategy::RandomProducts => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut pool: Vec<BraidWord> = vec![BraidWord::delta_pow(n, 2)];
            if !u.free_reduced().is_empty_word() {
                pool.push(u.clone());
            }
            for y in &opts.aux_public {
                if verify_commutes(y, u, opts.mod_delta_sq)? {
                    pool.push(y.clone());
                }
            }
            let mut out = pool.clone();
            for _ in 0..opts.random_iters {
                let a = pool.choose(&mut rng).expect("nonempty pool").clone();
                let b = pool.choose(&mut rng).expect("nonempty pool").clone();
                let p = if rng.gen_bool(0.5) {
                    a.product(&b)?
                } else {
                    a.product(&b.inverse())?
                };
                out.push(p.clone());
                pool.push(p);
                if pool.len() > 64 {
                    pool.remove(0);
                }
            }
            out
        }
    };

    let mut verified_elems = Vec::new();
    for c in candidates {
        if verify_commutes(&c, u, opts.mod_delta_sq)? {
            verified_elems.push(c);
        }
    }
    let elements = sort_dedup(verified_elems, opts.budget);
    Ok(CentralizerSample {
        base: u.clone(),
        extra_bases: Vec::new(),
        elements,
        strategy,
        verified: true,
        seed: opts.seed,
        mod_delta_sq: opts.mod_delta_sq,
    })
}

/// Keep only elements commuting with every base of every input sample.
pub fn approx_intersection(
    samples: &[CentralizerSample],
    budget: usize,
) -> Result<CentralizerSample, BraidError> {
    assert!(!samples.is_empty(), "need at least one sample");
    let first = &samples[0];
    let mut bases: Vec<BraidWord> = Vec::new();
    for s in samples {
        bases.push(s.base.clone());
        bases.extend(s.extra_bases.iter().cloned());
    }
    let mod_delta_sq = samples.iter().any(|s| s.mod_delta_sq);
    let mut kept = Vec::new();
    for s in samples {
        'cand: for c in &s.elements {
            for b in &bases {
                if !verify_commutes(c, b, mod_delta_sq)? {
                    continue 'cand;
                }
            }
            kept.push(c.clone());
        }
    }
    let elements = sort_dedup(kept, budget);
    Ok(CentralizerSample {
        base: first.base.clone(),
        extra_bases: bases[1..].to_vec(),
        elements,
        strategy: first.strategy,
        verified: true,
        seed: first.seed,
        mod_delta_sq,
    })
}

/// Simultaneous-conjugacy solving with automatic correction generators:
/// loop generators of the first equation's x-side centralizer.
pub fn mscsp_solve_with_centralizer(
    inst: &MscspInstance,
    sss_budget: usize,
    correction_budget: usize,
) -> Result<MscspOutcome, BraidError> {
    let corrections = |x: &BraidWord| {
        let opts = SampleOptions {
            sss_budget,
            budget: 32,
            ..Default::default()
        };
        sample_centralizer(x, Strategy::SssLoops, &opts)
            .map(|s| s.elements)
            .unwrap_or_default()
    };
    mscsp_solve(inst, sss_budget, &corrections, correction_budget)
}
