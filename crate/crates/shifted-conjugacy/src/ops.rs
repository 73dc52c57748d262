//! Shift-based operators.
//!
//! The shift d(w) bumps every Artin index by one; it induces a
//! monomorphism compatible with the standard inclusions, so a word on
//! extra strands still shifts to the right element. Everything here works
//! in a concrete B_m chosen with enough headroom; exceeding it surfaces
//! as a letter-out-of-range error from the word constructors.

use braid_core::{equal, BraidError, BraidWord};

/// delta_k = sigma_{k-1} ... sigma_1, as a word on `n` strands (k <= n).
pub fn delta_small(n: usize, k: usize) -> Result<BraidWord, BraidError> {
    let letters: Vec<i32> = (1..k as i32).rev().collect();
    BraidWord::new(n, letters)
}

/// Shifted conjugation a*b = a . d(b) . sigma_1 . d(a^-1), one strand up.
pub fn shifted_conjugate(a: &BraidWord, b: &BraidWord) -> Result<BraidWord, BraidError> {
    let m = a.strands().max(b.strands()) + 1;
    a.with_strands(m)?
        .product(&b.shift().with_strands(m)?)?
        .product(&BraidWord::generator(m, 1)?)?
        .product(&a.inverse().shift().with_strands(m)?)
}

/// Decomposition product w . d(c) . sigma_1 . d(x), one strand up.
/// With x = w^-1 this is exactly w*c.
pub fn sdp_compose(
    w: &BraidWord,
    c: &BraidWord,
    x: &BraidWord,
) -> Result<BraidWord, BraidError> {
    let m = w.strands().max(c.strands()).max(x.strands()) + 1;
    w.with_strands(m)?
        .product(&c.shift().with_strands(m)?)?
        .product(&BraidWord::generator(m, 1)?)?
        .product(&x.shift().with_strands(m)?)
}

/// Extractor target y1^-1 . y2: the left secret cancels identically, and
/// what remains is the conjugate of a middle built only from the c's.
pub fn ce_target(y1: &BraidWord, y2: &BraidWord) -> Result<BraidWord, BraidError> {
    y1.inverse().product(y2)
}

/// The middle element sigma_1^-1 . d(c1^-1 c2) . sigma_1 paired with a
/// ce_target: the target equals d(x)^-1 . middle . d(x).
pub fn ce_middle(c1: &BraidWord, c2: &BraidWord) -> Result<BraidWord, BraidError> {
    let g = c1.inverse().product(c2)?;
    let m = g.strands() + 1;
    let s1 = BraidWord::generator(m, 1)?;
    s1.inverse().product(&g.shift().with_strands(m)?)?.product(&s1)
}

/// Conjugate a (target, middle) pair by delta_m so the conjugating
/// unknown becomes x itself instead of d(x): g solves the lifted search
/// problem exactly when the corresponding shifted g solves the original.
pub fn lift_by_delta(
    target: &BraidWord,
    middle: &BraidWord,
) -> Result<(BraidWord, BraidWord), BraidError> {
    let m = target.strands().max(middle.strands());
    let d = delta_small(m, m)?;
    Ok((
        BraidWord::conjugate(&d, &target.with_strands(m)?)?,
        BraidWord::conjugate(&d, &middle.with_strands(m)?)?,
    ))
}

/// Six verified generators (three and their inverses) of an abelian
/// subgroup of the centralizer of the lifted middle of (c1, c2):
/// the full twist, the lifted middle itself, and the band generator
/// linking the outermost strands.
///
/// Panics if any generator fails the centralizing or pairwise-commutation
/// check: that indicates a construction bug, not bad input.
pub fn correction_subgroup(
    c1: &BraidWord,
    c2: &BraidWord,
) -> Result<Vec<BraidWord>, BraidError> {
    let n = c1.strands().max(c2.strands());
    let m = n + 1;
    let diff = c1.inverse().product(c2)?.shift().with_strands(m)?;
    let down: Vec<i32> = (2..=n as i32).rev().collect();
    let conj = BraidWord::new(m, down)?;
    let d1 = BraidWord::delta_pow(m, 2);
    let d2 = BraidWord::conjugate(&conj, &diff)?;
    let mut band = Vec::with_capacity(2 * n);
    band.extend(1..=n as i32);
    band.extend((1..=n as i32).rev());
    let d3 = BraidWord::new(m, band)?;

    let middle = ce_middle(c1, c2)?.with_strands(m)?;
    let lifted = BraidWord::conjugate(&delta_small(m, m)?, &middle)?;
    assert!(
        equal(&lifted, &d2)?,
        "lifted middle disagrees with its closed form"
    );
    let gens = vec![d1, d2, d3];
    for (i, g) in gens.iter().enumerate() {
        let a = g.product(&lifted)?;
        let b = lifted.product(g)?;
        assert!(
            equal(&a, &b)?,
            "correction generator {i} does not centralize the lifted middle"
        );
        for (j, h) in gens.iter().enumerate().skip(i + 1) {
            let a = g.product(h)?;
            let b = h.product(g)?;
            assert!(
                equal(&a, &b)?,
                "correction generators {i} and {j} do not commute"
            );
        }
    }
    let mut out = Vec::with_capacity(6);
    for g in gens {
        out.push(g.inverse());
        out.push(g);
    }
    Ok(out)
}
