use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::BraidError;
use crate::perm::{is_left_weighted, make_left_weighted, Permutation};
use crate::word::{BraidWord, LengthKind};

/// Left Garside normal form Delta^p A_1 ... A_k with left-weighted
/// non-trivial permutation-braid factors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GarsideNormalForm {
    pub n: usize,
    pub p: i64,
    pub factors: Vec<Permutation>,
}

impl GarsideNormalForm {
    pub fn inf(&self) -> i64 {
        self.p
    }

    pub fn sup(&self) -> i64 {
        self.p + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.p == 0 && self.factors.is_empty()
    }

    /// Spell the normal form back out as a word.
    pub fn to_word(&self) -> BraidWord {
        let mut w = BraidWord::delta_pow(self.n, self.p);
        for f in &self.factors {
            let fw = BraidWord::new(self.n, f.to_word()).expect("factor word in range");
            w = w.product(&fw).expect("same strand count");
        }
        w
    }

    /// The same element with the Delta power reduced into {0, 1}
    /// (representative of the class modulo the central Delta^2).
    pub fn mod_delta_sq(&self) -> GarsideNormalForm {
        GarsideNormalForm {
            n: self.n,
            p: self.p.rem_euclid(2),
            factors: self.factors.clone(),
        }
    }

    /// Every adjacent factor pair left-weighted, no identity or Delta
    /// factors: the structural validity check.
    pub fn is_left_weighted_form(&self) -> bool {
        if self
            .factors
            .iter()
            .any(|f| f.is_identity() || f.is_delta())
        {
            return false;
        }
        self.factors
            .windows(2)
            .all(|w| is_left_weighted(&w[0], &w[1]))
    }
}

/// Compute the left normal form of a word.
pub fn normal_form(w: &BraidWord) -> GarsideNormalForm {
    let n = w.strands();
    let letters = crate::word::free_reduce(w.letters());
    // Convert each letter to a permutation factor, pulling every Delta^-1
    // introduced by negative letters out to the left. A factor appended
    // when d Delta-inverses had been produced so far is later passed by
    // (d_total - d) of them, each conjugation applying tau once.
    let mut d: i64 = 0;
    let mut staged: Vec<(Permutation, i64)> = Vec::with_capacity(letters.len());
    let delta = Permutation::delta(n);
    for x in letters {
        let i = x.unsigned_abs() as usize;
        if x > 0 {
            staged.push((Permutation::transposition(n, i), d));
        } else {
            // sigma_i^-1 = Delta^-1 (Delta sigma_i^-1) and Delta sigma_i^-1
            // is the permutation braid  delta . sigma_i.
            d += 1;
            staged.push((delta.compose(&Permutation::transposition(n, i)), d));
        }
    }
    let p = -d;
    let factors: Vec<Permutation> = staged
        .into_iter()
        .map(|(f, d0)| if (d - d0) % 2 == 1 { f.tau() } else { f })
        .collect();
    normal_form_of_factors(n, p, factors)
}

/// Normal form of Delta^p F_1 ... F_k where every F_i is a permutation
/// braid. Much cheaper than re-spelling the product as a word when the
/// factors are already at hand.
pub fn normal_form_of_factors(
    n: usize,
    p: i64,
    factors: Vec<Permutation>,
) -> GarsideNormalForm {
    let mut p = p;
    let mut factors = factors;
    // Left-weighted sweeps until stable.
    loop {
        factors.retain(|f| !f.is_identity());
        let mut changed = false;
        for j in 1..factors.len() {
            let (left, right) = factors.split_at_mut(j);
            let a = left.last_mut().unwrap();
            let b = &mut right[0];
            if make_left_weighted(a, b) {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    factors.retain(|f| !f.is_identity());
    while factors.first().is_some_and(|f| f.is_delta()) {
        factors.remove(0);
        p += 1;
    }
    GarsideNormalForm { n, p, factors }
}

/// Normal form of s^-1 x s for a permutation braid s, computed from the
/// normal form of x without re-spelling words:
///   s^-1 Delta^p A_1..A_k s = Delta^(p-1) tau^p(Delta s^-1) A_1..A_k s.
pub fn conjugate_nf_by_simple(x: &GarsideNormalForm, s: &Permutation) -> GarsideNormalForm {
    let delta = Permutation::delta(x.n);
    let comp = delta.compose(&s.inverse());
    let mut fs = Vec::with_capacity(x.factors.len() + 2);
    fs.push(if x.p.rem_euclid(2) == 1 { comp.tau() } else { comp });
    fs.extend(x.factors.iter().cloned());
    fs.push(s.clone());
    normal_form_of_factors(x.n, x.p - 1, fs)
}

/// Normal form of s x s^-1 for a permutation braid s:
///   s Delta^p A_1..A_k s^-1 = Delta^(p-1) tau^(p-1)(s) tau(A_1..A_k) tau(s^-1 Delta).
pub fn conjugate_nf_by_simple_inv(x: &GarsideNormalForm, s: &Permutation) -> GarsideNormalForm {
    let delta = Permutation::delta(x.n);
    let comp = s.inverse().compose(&delta);
    let mut fs = Vec::with_capacity(x.factors.len() + 2);
    fs.push(if (x.p - 1).rem_euclid(2) == 1 {
        s.tau()
    } else {
        s.clone()
    });
    fs.extend(x.factors.iter().map(|a| a.tau()));
    fs.push(comp.tau());
    normal_form_of_factors(x.n, x.p - 1, fs)
}

thread_local! {
    static NF_CACHE: RefCell<HashMap<(usize, Vec<i32>), GarsideNormalForm>> =
        RefCell::new(HashMap::new());
}

const NF_CACHE_CAP: usize = 1 << 16;

/// Normal form with a per-thread cache keyed by the word value.
pub fn normal_form_cached(w: &BraidWord) -> GarsideNormalForm {
    let key = (w.strands(), w.letters().to_vec());
    NF_CACHE.with(|c| {
        if let Some(nf) = c.borrow().get(&key) {
            return nf.clone();
        }
        let nf = normal_form(w);
        let mut map = c.borrow_mut();
        if map.len() >= NF_CACHE_CAP {
            map.clear();
        }
        map.insert(key, nf.clone());
        nf
    })
}

/// Exact equality in B_n via normal forms.
pub fn equal(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    if a.strands() != b.strands() {
        return Err(BraidError::StrandMismatch(a.strands(), b.strands()));
    }
    Ok(normal_form_cached(a) == normal_form_cached(b))
}

/// Equality modulo the central subgroup generated by Delta^2.
pub fn equal_mod_delta_sq(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    if a.strands() != b.strands() {
        return Err(BraidError::StrandMismatch(a.strands(), b.strands()));
    }
    Ok(normal_form_cached(a).mod_delta_sq() == normal_form_cached(b).mod_delta_sq())
}

/// The prefix order: a <= b iff a^-1 b is a positive braid,
/// i.e. inf(a^-1 b) >= 0.
pub fn prefix_leq(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    let q = a.inverse().product(b)?;
    Ok(normal_form_cached(&q).inf() >= 0)
}

/// Length of a word under the selected length function.
pub fn word_length(w: &BraidWord, kind: LengthKind) -> usize {
    match kind {
        LengthKind::ArtinLetters => w.artin_len(),
        LengthKind::CanonicalLength => normal_form_cached(w).canonical_length(),
        LengthKind::SupMinusInf => {
            let nf = normal_form_cached(w);
            (nf.sup() - nf.inf()) as usize
        }
    }
}
