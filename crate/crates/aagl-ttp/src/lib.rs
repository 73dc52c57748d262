//! Key generation for the trusted-third-party protocol over two commuting
//! braid subgroup families, plus the public-instance extraction an attacker
//! sees and the ground-truth verdict used by experiments.
//!
//! The dealer picks two secret generator-index sets BL and BR with all
//! pairwise index distances at least 2 (so the subgroups they generate
//! commute elementwise), samples word families w_i over BL and v_i over BR,
//! and publishes their conjugates by a common secret z, reduced to normal
//! form modulo the central Delta^2.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use braid_core::sampling::random_reduced_word;
use braid_core::{equal, equal_mod_delta_sq, normal_form, BraidError, BraidWord, GarsideNormalForm};

#[derive(Debug, Error)]
pub enum TtpError {
    #[error("no index split with separation >= 2: need alpha + beta <= n - 2, got alpha={alpha}, beta={beta}, n={n}")]
    InfeasibleSplit { n: usize, alpha: usize, beta: usize },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TTPParams {
    pub n: usize,
    /// |BL|
    pub alpha: usize,
    /// |BR|
    pub beta: usize,
    /// Words published per family.
    pub gamma: usize,
    /// Length bound for the w_i and v_i, in Artin letters.
    pub max_word_len: usize,
    /// Security parameter: z must carry at least m bits, which fixes its
    /// letter count through gz_bound.
    pub m: u32,
    pub seed: u64,
}

impl TTPParams {
    pub fn validate(&self) -> Result<(), TtpError> {
        if self.n < 5 {
            return Err(TtpError::BadParams(format!("n must be >= 5, got {}", self.n)));
        }
        if self.alpha == 0 || self.beta == 0 {
            return Err(TtpError::BadParams("alpha and beta must be >= 1".into()));
        }
        if self.max_word_len == 0 {
            return Err(TtpError::BadParams("max_word_len must be >= 1".into()));
        }
        if self.m == 0 {
            return Err(TtpError::BadParams("m must be >= 1".into()));
        }
        if self.alpha + self.beta + 2 > self.n {
            return Err(TtpError::InfeasibleSplit {
                n: self.n,
                alpha: self.alpha,
                beta: self.beta,
            });
        }
        Ok(())
    }
}

/// Which published family a word belongs to. The two sets are published
/// separately, so the tag is public information.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    W,
    V,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TTPSecret {
    pub z: BraidWord,
    pub bl: Vec<usize>,
    pub br: Vec<usize>,
    pub w_words: Vec<BraidWord>,
    pub v_words: Vec<BraidWord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TTPPublic {
    pub n: usize,
    pub gamma: usize,
    /// The letter count the dealer used for z; an attacker derives the same
    /// value from (n, m).
    pub g_z: u64,
    pub w_pub: Vec<GarsideNormalForm>,
    pub v_pub: Vec<GarsideNormalForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TTPKeyPair {
    pub params: TTPParams,
    pub secret: TTPSecret,
    pub public: TTPPublic,
}

/// Smallest g with (2n-2)^g >= 2^m, computed exactly.
pub fn gz_bound(n: usize, m: u32) -> u64 {
    assert!(n >= 3 && m >= 1);
    let base = BigUint::from(2 * n - 2);
    let target = BigUint::from(1u8) << m;
    let mut pow = BigUint::from(1u8);
    let mut g = 0u64;
    while pow < target {
        pow *= &base;
        g += 1;
    }
    g
}

fn random_subset<R: Rng>(pool: &[usize], k: usize, rng: &mut R) -> Vec<usize> {
    let mut picked: Vec<usize> = pool.choose_multiple(rng, k).copied().collect();
    picked.sort_unstable();
    picked
}

fn random_family_word<R: Rng>(
    n: usize,
    indices: &[usize],
    max_len: usize,
    rng: &mut R,
) -> BraidWord {
    let len = rng.gen_range(1..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = *indices.choose(rng).expect("nonempty index set") as i32;
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("indices in range")
}

/// Generate a keypair, optionally forcing a specific z (test hook; pass
/// the identity to publish the plain families).
pub fn ttp_keygen_with_z(
    params: &TTPParams,
    z_override: Option<BraidWord>,
) -> Result<TTPKeyPair, TtpError> {
    params.validate()?;
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    // a cut point k splits the generator indices into {1..k} and
    // {k+2..n-1}; any choice across the gap has index distance >= 2
    let lo = params.alpha;
    let hi = n - 2 - params.beta;
    let k = rng.gen_range(lo..=hi);
    let left_pool: Vec<usize> = (1..=k).collect();
    let right_pool: Vec<usize> = (k + 2..n).collect();
    let bl = random_subset(&left_pool, params.alpha, &mut rng);
    let br = random_subset(&right_pool, params.beta, &mut rng);

    let w_words: Vec<BraidWord> = (0..params.gamma)
        .map(|_| random_family_word(n, &bl, params.max_word_len, &mut rng))
        .collect();
    let v_words: Vec<BraidWord> = (0..params.gamma)
        .map(|_| random_family_word(n, &br, params.max_word_len, &mut rng))
        .collect();

    let g_z = gz_bound(n, params.m);
    let z = match z_override {
        Some(z) => z.with_strands(n)?,
        None => random_reduced_word(n, g_z as usize, &mut rng),
    };

    let publish = |words: &[BraidWord]| -> Result<Vec<GarsideNormalForm>, TtpError> {
        words
            .iter()
            .map(|w| Ok(normal_form(&BraidWord::conjugate(&z, w)?).mod_delta_sq()))
            .collect()
    };
    let w_pub = publish(&w_words)?;
    let v_pub = publish(&v_words)?;

    Ok(TTPKeyPair {
        params: *params,
        secret: TTPSecret {
            z,
            bl,
            br,
            w_words,
            v_words,
        },
        public: TTPPublic {
            n,
            gamma: params.gamma,
            g_z,
            w_pub,
            v_pub,
        },
    })
}

pub fn ttp_keygen(params: &TTPParams) -> Result<TTPKeyPair, TtpError> {
    ttp_keygen_with_z(params, None)
}

/// A tagged public word; the x side of each conjugacy equation is hidden.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedElement {
    pub y: BraidWord,
    pub family: Family,
}

/// Everything an attacker gets: the two published families plus the
/// parameters needed to bound the secret.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MSCSPvInstance {
    pub n: usize,
    pub elements: Vec<TaggedElement>,
    pub gamma: usize,
    pub g_z: u64,
}

impl MSCSPvInstance {
    pub fn family(&self, family: Family) -> impl Iterator<Item = &BraidWord> {
        self.elements
            .iter()
            .filter(move |e| e.family == family)
            .map(|e| &e.y)
    }
}

/// Repackage a public key as the attack-facing instance (lossless, no
/// secret material).
pub fn to_mscspv_instance(public: &TTPPublic) -> MSCSPvInstance {
    let mut elements = Vec::with_capacity(public.w_pub.len() + public.v_pub.len());
    for nf in &public.w_pub {
        elements.push(TaggedElement {
            y: nf.to_word(),
            family: Family::W,
        });
    }
    for nf in &public.v_pub {
        elements.push(TaggedElement {
            y: nf.to_word(),
            family: Family::V,
        });
    }
    MSCSPvInstance {
        n: public.n,
        elements,
        gamma: public.gamma,
        g_z: public.g_z,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Invalid,
    /// Conjugates every published word exactly like the real z does.
    Equivalent,
    Exact,
}

/// Ground-truth check of a recovered conjugator (experiment mode: needs the
/// secret half). Exact means equal to z as a group element; equivalent
/// means z^-1 * candidate commutes with every secret word, so the candidate
/// acts identically on all published material.
pub fn verify_attack_solution(
    keypair: &TTPKeyPair,
    candidate_z: &BraidWord,
    recovered_x: Option<&[BraidWord]>,
) -> Result<Verdict, TtpError> {
    let secret = &keypair.secret;
    if let Some(xs) = recovered_x {
        let published: Vec<&GarsideNormalForm> = keypair
            .public
            .w_pub
            .iter()
            .chain(keypair.public.v_pub.iter())
            .collect();
        if xs.len() != published.len() {
            return Ok(Verdict::Invalid);
        }
        for (x, y) in xs.iter().zip(published) {
            let c = BraidWord::conjugate(candidate_z, x)?;
            if !equal_mod_delta_sq(&c, &y.to_word())? {
                return Ok(Verdict::Invalid);
            }
        }
    }
    if equal(candidate_z, &secret.z)? {
        return Ok(Verdict::Exact);
    }
    let d = secret.z.inverse().product(candidate_z)?;
    for word in secret.w_words.iter().chain(secret.v_words.iter()) {
        let dw = d.product(word)?;
        let wd = word.product(&d)?;
        if !equal(&dw, &wd)? {
            return Ok(Verdict::Invalid);
        }
    }
    Ok(Verdict::Equivalent)
}
