use serde::{Deserialize, Serialize};

use crate::error::BraidError;

/// A word in the signed Artin generators of B_n. Letter i > 0 means
/// sigma_i, letter -i means sigma_i^-1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    #[serde(rename = "word")]
    letters: Vec<i32>,
}

impl std::fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "B{}{:?}", self.n, self.letters)
    }
}

/// Free reduction: cancel adjacent x x^-1 pairs.
pub fn free_reduce(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &x in letters {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if n < 2 {
            return Err(BraidError::BadStrandCount(n));
        }
        for &x in &letters {
            if x == 0 || x.unsigned_abs() as usize > n - 1 {
                return Err(BraidError::LetterOutOfRange { letter: x, n });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord {
            n,
            letters: Vec::new(),
        }
    }

    /// The single letter sigma_i (i > 0) or sigma_{-i}^-1 (i < 0).
    pub fn generator(n: usize, i: i32) -> Result<Self, BraidError> {
        Self::new(n, vec![i])
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<i32> {
        self.letters
    }

    pub fn free_reduced(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: free_reduce(&self.letters),
        }
    }

    /// Letter count after free reduction.
    pub fn artin_len(&self) -> usize {
        free_reduce(&self.letters).len()
    }

    pub fn is_empty_word(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_strands(&self, other: &BraidWord) -> Result<(), BraidError> {
        if self.n != other.n {
            return Err(BraidError::StrandMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Concatenation followed by free reduction.
    pub fn product(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        self.check_strands(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            n: self.n,
            letters: free_reduce(&letters),
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|&x| -x).collect(),
        }
    }

    /// z * x * z^-1.
    pub fn conjugate(z: &BraidWord, x: &BraidWord) -> Result<BraidWord, BraidError> {
        z.product(x)?.product(&z.inverse())
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k >= 0 {
            self.clone()
        } else {
            self.inverse()
        };
        let mut letters = Vec::new();
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            n: self.n,
            letters: free_reduce(&letters),
        }
    }

    /// Image under abelianization (sum of letter signs); a conjugacy
    /// invariant.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&x| x.signum() as i64).sum()
    }

    /// The positive half twist Delta as an explicit word.
    pub fn delta(n: usize) -> BraidWord {
        let mut letters = Vec::new();
        for k in (1..n).rev() {
            for i in 1..=k {
                letters.push(i as i32);
            }
        }
        BraidWord { n, letters }
    }

    /// Delta^p for any integer p.
    pub fn delta_pow(n: usize, p: i64) -> BraidWord {
        Self::delta(n).pow(p)
    }

    /// Reinterpret in B_m for m >= n (the natural inclusion).
    pub fn with_strands(&self, m: usize) -> Result<BraidWord, BraidError> {
        BraidWord::new(m, self.letters.clone())
    }

    /// The shift monomorphism d: B_n -> B_{n+1}, sigma_i -> sigma_{i+1}.
    pub fn shift(&self) -> BraidWord {
        BraidWord {
            n: self.n + 1,
            letters: self
                .letters
                .iter()
                .map(|&x| if x > 0 { x + 1 } else { x - 1 })
                .collect(),
        }
    }

    /// Inverse of `shift` on words with no sigma_1 after free reduction.
    /// Output lives in B_{n-1}.
    pub fn unshift(&self) -> Result<BraidWord, BraidError> {
        let reduced = free_reduce(&self.letters);
        if reduced.iter().any(|&x| x.abs() == 1) {
            return Err(BraidError::UnshiftBlocked);
        }
        BraidWord::new(
            self.n - 1,
            reduced
                .iter()
                .map(|&x| if x > 0 { x - 1 } else { x + 1 })
                .collect(),
        )
    }
}

/// Length functions selectable by the attack algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LengthKind {
    ArtinLetters,
    CanonicalLength,
    SupMinusInf,
}

impl std::str::FromStr for LengthKind {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, BraidError> {
        match s {
            "artin-letters" => Ok(LengthKind::ArtinLetters),
            "canonical-length" => Ok(LengthKind::CanonicalLength),
            "sup-minus-inf" => Ok(LengthKind::SupMinusInf),
            other => Err(BraidError::UnknownLengthKind(other.to_string())),
        }
    }
}
