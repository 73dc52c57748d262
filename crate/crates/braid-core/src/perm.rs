use serde::{Deserialize, Serialize};

use crate::error::BraidError;

/// A permutation of {0..n-1}, standing for a permutation braid (a positive
/// left divisor of the half twist). Serialized as 1-based image arrays.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images.iter().map(|&x| x + 1).collect()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = BraidError;
    fn try_from(v: Vec<usize>) -> Result<Self, BraidError> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in &v {
            if x < 1 || x > n || seen[x - 1] {
                return Err(BraidError::BadPermutation);
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: v.into_iter().map(|x| x - 1).collect(),
        })
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The half-twist permutation i -> n-1-i.
    pub fn delta(n: usize) -> Self {
        Permutation {
            images: (0..n).rev().collect(),
        }
    }

    /// The transposition for the generator with 1-based index i.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.n();
        self.images.iter().enumerate().all(|(i, &x)| x == n - 1 - i)
    }

    /// Composition as braid concatenation: `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// Descent set = the starting set S(A) of the permutation braid, as
    /// 1-based generator indices.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.images[i - 1] > self.images[i])
            .collect()
    }

    /// Finishing set F(A): generators that can end a positive word for A.
    pub fn finishing_set(&self) -> Vec<usize> {
        self.inverse().descents()
    }

    /// Conjugation by the half twist: tau(A) = Delta^-1 A Delta.
    pub fn tau(&self) -> Permutation {
        let n = self.n();
        Permutation {
            images: (0..n).map(|i| n - 1 - self.images[n - 1 - i]).collect(),
        }
    }

    /// A positive word spelling this permutation braid (greedy minimal
    /// descent extraction; letter count = inversion number).
    pub fn to_word(&self) -> Vec<i32> {
        let mut p = self.images.clone();
        let mut word = Vec::new();
        loop {
            let d = (1..p.len()).find(|&i| p[i - 1] > p[i]);
            match d {
                None => break,
                Some(i) => {
                    word.push(i as i32);
                    p.swap(i - 1, i);
                }
            }
        }
        word
    }

    /// Swap strands i-1, i in the image (right-multiplication by the
    /// transposition as braid concatenation: `self` then sigma_i).
    pub fn right_mul_transposition(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        for x in images.iter_mut() {
            if *x == i - 1 {
                *x = i;
            } else if *x == i {
                *x = i - 1;
            }
        }
        Permutation { images }
    }

    /// Left-multiplication by the transposition: sigma_i then `self`.
    pub fn left_mul_transposition(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }
}

/// True when the adjacent factor pair (a, b) is left-weighted:
/// every starting generator of b is a finishing generator of a.
pub fn is_left_weighted(a: &Permutation, b: &Permutation) -> bool {
    let fa = a.finishing_set();
    b.descents().iter().all(|i| fa.contains(i))
}

/// Slide letters from b into a until the pair is left-weighted.
/// Returns true when anything moved.
pub fn make_left_weighted(a: &mut Permutation, b: &mut Permutation) -> bool {
    let mut changed = false;
    loop {
        let fa = a.finishing_set();
        let moved = b.descents().into_iter().find(|i| !fa.contains(i));
        match moved {
            None => return changed,
            Some(i) => {
                *a = a.right_mul_transposition(i);
                *b = b.left_mul_transposition(i);
                changed = true;
            }
        }
    }
}
