use braid_core::BraidWord;

use crate::OracleError;

/// Desk-scale cap: coordinate growth is exponential in word length, so the
/// oracle is only offered for small strand counts.
pub const STRAND_LIMIT: usize = 12;

/// Integer coordinates of a lamination of a punctured disk, acted on by
/// braid generators through exact piecewise-linear updates. The action is
/// faithful, which makes "same action on the base point" an equality test
/// independent of the normal-form engine.
///
/// For B_n the state holds n pairs (a_i, b_i); generator i acts on pairs
/// (i-1, i). The sum of the b-coordinates is invariant under every
/// generator.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct CurveCoordinates {
    n: usize,
    pairs: Vec<(i64, i64)>,
}

#[inline]
fn pos(x: i64) -> i64 {
    x.max(0)
}

#[inline]
fn neg(x: i64) -> i64 {
    x.min(0)
}

/// Checked evaluation of the generator update on one pair of pairs.
/// Returns None on i64 overflow.
fn step(a1: i64, b1: i64, a2: i64, b2: i64, positive: bool) -> Option<(i64, i64, i64, i64)> {
    // The inverse generator is the same map conjugated by a -> -a.
    let (a1, a2) = if positive { (a1, a2) } else { (-a1, -a2) };
    let z = a1
        .checked_sub(a2)?
        .checked_sub(neg(b1))?
        .checked_add(pos(b2))?;
    let na1 = a1
        .checked_add(pos(b1))?
        .checked_add(pos(pos(b2).checked_sub(z)?))?;
    let nb1 = b2.checked_sub(pos(z))?;
    let na2 = a2
        .checked_add(neg(b2))?
        .checked_add(neg(neg(b1).checked_add(z)?))?;
    let nb2 = b1.checked_add(pos(z))?;
    let (na1, na2) = if positive { (na1, na2) } else { (-na1, -na2) };
    Some((na1, nb1, na2, nb2))
}

impl CurveCoordinates {
    /// The fixed base point for B_n: (0, 1) in every pair.
    pub fn base(n: usize) -> Self {
        CurveCoordinates {
            n,
            pairs: vec![(0, 1); n],
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn coordinates(&self) -> Vec<i64> {
        self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    /// Apply a single signed generator.
    pub fn apply_letter(&mut self, letter: i32) -> Result<(), OracleError> {
        let i = letter.unsigned_abs() as usize - 1;
        debug_assert!(i + 1 < self.pairs.len());
        let (a1, b1) = self.pairs[i];
        let (a2, b2) = self.pairs[i + 1];
        let (na1, nb1, na2, nb2) =
            step(a1, b1, a2, b2, letter > 0).ok_or(OracleError::Overflow)?;
        self.pairs[i] = (na1, nb1);
        self.pairs[i + 1] = (na2, nb2);
        Ok(())
    }

    pub fn apply_word(&mut self, w: &BraidWord) -> Result<(), OracleError> {
        for &x in w.letters() {
            self.apply_letter(x)?;
        }
        Ok(())
    }
}

/// Decide equality in B_n by comparing the actions on the base point.
pub fn oracle_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, OracleError> {
    if a.strands() != b.strands() {
        return Err(OracleError::StrandMismatch(a.strands(), b.strands()));
    }
    let n = a.strands();
    if n > STRAND_LIMIT {
        return Err(OracleError::TooManyStrands {
            n,
            limit: STRAND_LIMIT,
        });
    }
    let mut ca = CurveCoordinates::base(n);
    ca.apply_word(a)?;
    let mut cb = CurveCoordinates::base(n);
    cb.apply_word(b)?;
    Ok(ca == cb)
}
