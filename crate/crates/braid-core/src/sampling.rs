use rand::Rng;

use crate::word::{free_reduce, BraidWord};

/// A uniform signed generator index for B_n.
pub fn random_letter<R: Rng>(n: usize, rng: &mut R) -> i32 {
    let i = rng.gen_range(1..n) as i32;
    if rng.gen_bool(0.5) {
        i
    } else {
        -i
    }
}

/// A random word of exactly `len` letters (not necessarily reduced).
pub fn random_word<R: Rng>(n: usize, len: usize, rng: &mut R) -> BraidWord {
    let letters = (0..len).map(|_| random_letter(n, rng)).collect();
    BraidWord::new(n, letters).expect("letters in range")
}

/// A uniform freely reduced word of exactly `len` letters: each letter is
/// drawn uniformly from the 2(n-1) signed generators minus the inverse of
/// its predecessor.
pub fn random_reduced_word<R: Rng>(n: usize, len: usize, rng: &mut R) -> BraidWord {
    let mut letters: Vec<i32> = Vec::with_capacity(len);
    while letters.len() < len {
        let x = random_letter(n, rng);
        if letters.last() == Some(&-x) {
            continue;
        }
        letters.push(x);
    }
    BraidWord::new(n, letters).expect("letters in range")
}

/// Rewrite a word by `ops` random applications of the defining relations
/// and free insertions, preserving the group element exactly.
pub fn perturb_word<R: Rng>(w: &BraidWord, ops: usize, rng: &mut R) -> BraidWord {
    let n = w.strands();
    let mut letters = w.letters().to_vec();
    for _ in 0..ops {
        match rng.gen_range(0..4u8) {
            0 => {
                // insert x x^-1
                let pos = rng.gen_range(0..=letters.len());
                let x = random_letter(n, rng);
                letters.splice(pos..pos, [x, -x]);
            }
            1 if letters.len() >= 2 => {
                // commute distant generators
                let j = rng.gen_range(0..letters.len() - 1);
                if (letters[j].abs() - letters[j + 1].abs()).abs() >= 2 {
                    letters.swap(j, j + 1);
                }
            }
            2 if letters.len() >= 3 => {
                // braid relation on a positive or negative triple
                let j = rng.gen_range(0..letters.len() - 2);
                let (x, y, z) = (letters[j], letters[j + 1], letters[j + 2]);
                if x == z && x.signum() == y.signum() && (x.abs() - y.abs()).abs() == 1 {
                    letters[j] = y;
                    letters[j + 1] = x;
                    letters[j + 2] = y;
                }
            }
            3 => {
                // free-reduce occasionally so the word does not only grow
                letters = free_reduce(&letters);
            }
            _ => {}
        }
    }
    BraidWord::new(n, letters).expect("letters in range")
}
