use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use braid_core::{conjugate_nf_by_simple, normal_form, BraidWord, GarsideNormalForm, Permutation};

/// The super summit set of an element: all conjugates with maximal inf and
/// minimal sup, with a conjugator recorded per member.
#[derive(Clone, Debug)]
pub struct SummitSet {
    pub n: usize,
    pub input: BraidWord,
    /// Canonical representative: the lexicographically smallest member.
    pub base: GarsideNormalForm,
    /// base = to_base * input * to_base^-1.
    pub to_base: BraidWord,
    /// member -> c with member = c * base * c^-1.
    pub members: BTreeMap<GarsideNormalForm, BraidWord>,
    pub summit_inf: i64,
    pub summit_sup: i64,
    /// True when the member budget ran out before closure was reached.
    pub truncated: bool,
}

impl SummitSet {
    pub fn contains(&self, nf: &GarsideNormalForm) -> bool {
        self.members.contains_key(nf)
    }

    /// Conjugator from the original input to the given member.
    pub fn conjugator_from_input(&self, member: &GarsideNormalForm) -> Option<BraidWord> {
        let c = self.members.get(member)?;
        Some(c.product(&self.to_base).expect("same strands"))
    }
}

fn factor_word(n: usize, f: &Permutation) -> BraidWord {
    BraidWord::new(n, f.to_word()).expect("factor letters in range")
}

/// One cycling step: conjugate so the first factor moves to the back.
/// Returns the new element and the conjugator g (new = g * old * g^-1).
/// None when the canonical length is zero (pure Delta power).
fn cycling_step(nf: &GarsideNormalForm) -> Option<(BraidWord, BraidWord)> {
    let first = nf.factors.first()?;
    // Delta^p A1 ... = tau^-p(A1) Delta^p A2 ...; tau has order two on
    // factors, so tau^-p is tau when p is odd.
    let a = if nf.p.rem_euclid(2) == 1 {
        first.tau()
    } else {
        first.clone()
    };
    let g = factor_word(nf.n, &a).inverse();
    let new = BraidWord::conjugate(&g, &nf.to_word()).expect("same strands");
    Some((new, g))
}

/// One decycling step: conjugate so the last factor moves to the front.
fn decycling_step(nf: &GarsideNormalForm) -> Option<(BraidWord, BraidWord)> {
    let last = nf.factors.last()?;
    let g = factor_word(nf.n, last);
    let new = BraidWord::conjugate(&g, &nf.to_word()).expect("same strands");
    Some((new, g))
}

/// Iterated cycling and decycling until inf is maximal and sup minimal
/// (detected by orbit repetition without improvement). Returns the super
/// summit representative and the conjugator from the input.
pub fn cycling_decycling(x: &BraidWord) -> (GarsideNormalForm, BraidWord) {
    let mut cur = normal_form(x);
    let mut conj = BraidWord::identity(x.strands());
    loop {
        let mut improved = false;
        // raise inf by cycling
        let mut seen: HashSet<GarsideNormalForm> = HashSet::new();
        let mut best = cur.clone();
        let mut best_conj = conj.clone();
        loop {
            seen.insert(cur.clone());
            let Some((new_word, g)) = cycling_step(&cur) else {
                break;
            };
            let new_nf = normal_form(&new_word);
            conj = g.product(&conj).expect("same strands");
            if new_nf.inf() > best.inf() {
                best = new_nf.clone();
                best_conj = conj.clone();
                improved = true;
                seen.clear();
            }
            if seen.contains(&new_nf) {
                break;
            }
            cur = new_nf;
        }
        cur = best;
        conj = best_conj;
        // lower sup by decycling
        let mut seen: HashSet<GarsideNormalForm> = HashSet::new();
        let mut best = cur.clone();
        let mut best_conj = conj.clone();
        loop {
            seen.insert(cur.clone());
            let Some((new_word, g)) = decycling_step(&cur) else {
                break;
            };
            let new_nf = normal_form(&new_word);
            conj = g.product(&conj).expect("same strands");
            if new_nf.sup() < best.sup() {
                best = new_nf.clone();
                best_conj = conj.clone();
                improved = true;
                seen.clear();
            }
            if seen.contains(&new_nf) {
                break;
            }
            cur = new_nf;
        }
        cur = best;
        conj = best_conj;
        if !improved {
            let verify = BraidWord::conjugate(&conj, x).expect("same strands");
            debug_assert_eq!(normal_form(&verify), cur);
            return (cur, conj);
        }
    }
}

thread_local! {
    static SIMPLES: RefCell<HashMap<usize, Vec<Permutation>>> = RefCell::new(HashMap::new());
}

/// All non-identity permutation braids of B_n (including Delta).
fn simple_elements(n: usize) -> Vec<Permutation> {
    SIMPLES.with(|c| {
        if let Some(v) = c.borrow().get(&n) {
            return v.clone();
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(n);
        let mut used = vec![false; n];
        collect_perms(n, &mut prefix, &mut used, &mut out);
        out.retain(|p| !p.is_identity());
        out.sort();
        c.borrow_mut().insert(n, out.clone());
        out
    })
}

fn collect_perms(n: usize, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
    if prefix.len() == n {
        let p = Permutation::try_from(prefix.iter().map(|&x| x + 1).collect::<Vec<_>>())
            .expect("valid permutation");
        out.push(p);
        return;
    }
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            prefix.push(i);
            collect_perms(n, prefix, used, out);
            prefix.pop();
            used[i] = false;
        }
    }
}

pub const DEFAULT_SSS_BUDGET: usize = 20_000;

/// Compute the super summit set of x, closing under conjugation by all
/// simple elements, up to `budget` members.
pub fn sss_compute(x: &BraidWord, budget: usize) -> SummitSet {
    let n = x.strands();
    let (rep, c0) = cycling_decycling(x);
    let simples = simple_elements(n);

    // member -> conjugator from input
    let mut members: BTreeMap<GarsideNormalForm, BraidWord> = BTreeMap::new();
    let mut queue: VecDeque<GarsideNormalForm> = VecDeque::new();
    let mut summit_inf = rep.inf();
    let mut summit_sup = rep.sup();
    let mut truncated = false;
    members.insert(rep.clone(), c0);
    queue.push_back(rep);

    while let Some(m) = queue.pop_front() {
        let cm = members.get(&m).expect("queued member recorded").clone();
        for s in &simples {
            let cand = conjugate_nf_by_simple(&m, s);
            let better = cand.inf() > summit_inf
                || (cand.inf() == summit_inf && cand.sup() < summit_sup);
            if better {
                // the seed was not summit after all; restart from here
                summit_inf = cand.inf();
                summit_sup = cand.sup();
                members.clear();
                queue.clear();
                let g = factor_word(n, s).inverse();
                let c = g.product(&cm).expect("same strands");
                members.insert(cand.clone(), c);
                queue.push_back(cand);
                break;
            }
            if cand.inf() != summit_inf || cand.sup() != summit_sup {
                continue;
            }
            if members.contains_key(&cand) {
                continue;
            }
            if members.len() >= budget {
                truncated = true;
                continue;
            }
            let g = factor_word(n, s).inverse();
            let c = g.product(&cm).expect("same strands");
            members.insert(cand.clone(), c);
            queue.push_back(cand);
        }
    }

    let base = members.keys().next().expect("nonempty").clone();
    let to_base = members.get(&base).expect("base recorded").clone();
    let to_base_inv = to_base.inverse();
    let members = members
        .into_iter()
        .map(|(m, c)| {
            let rel = c.product(&to_base_inv).expect("same strands");
            (m, rel)
        })
        .collect();
    SummitSet {
        n,
        input: x.clone(),
        base,
        to_base,
        members,
        summit_inf,
        summit_sup,
        truncated,
    }
}

thread_local! {
    static SSS_CACHE: RefCell<HashMap<(usize, Vec<i32>, usize), SummitSet>> =
        RefCell::new(HashMap::new());
}

const SSS_CACHE_CAP: usize = 128;

/// sss_compute with a small per-thread cache keyed by the input word.
pub fn sss_compute_cached(x: &BraidWord, budget: usize) -> SummitSet {
    let key = (x.strands(), x.letters().to_vec(), budget);
    SSS_CACHE.with(|c| {
        if let Some(s) = c.borrow().get(&key) {
            return s.clone();
        }
        let s = sss_compute(x, budget);
        let mut map = c.borrow_mut();
        if map.len() >= SSS_CACHE_CAP {
            map.clear();
        }
        map.insert(key, s.clone());
        s
    })
}
