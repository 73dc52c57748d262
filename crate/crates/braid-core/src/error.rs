use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("strand count {0} is too small (need n >= 2)")]
    BadStrandCount(usize),
    #[error("letter {letter} out of range for {n} strands")]
    LetterOutOfRange { letter: i32, n: usize },
    #[error("unshift: word contains a +-sigma_1 letter after free reduction")]
    UnshiftBlocked,
    #[error("unknown length function kind: {0}")]
    UnknownLengthKind(String),
    #[error("invalid permutation images")]
    BadPermutation,
}
