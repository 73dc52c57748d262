use braid_core::{equal, BraidWord};

use crate::OracleError;

/// Result of an exhaustive search over short words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteResult {
    /// Matching words, in enumeration order (by length, then letter order
    /// 1, -1, 2, -2, ...).
    pub words: Vec<BraidWord>,
    /// True when the node budget ran out before the tree was exhausted.
    pub partial: bool,
}

const DEFAULT_NODE_BUDGET: usize = 20_000_000;

fn letter_order(n: usize) -> Vec<i32> {
    (1..n as i32).flat_map(|i| [i, -i]).collect()
}

/// All freely reduced words g with |g| <= max_len and g x g^-1 = y,
/// exhaustively over the free-reduction-pruned tree of signed letters.
pub fn brute_conjugators(
    x: &BraidWord,
    y: &BraidWord,
    max_len: usize,
) -> Result<BruteResult, OracleError> {
    brute_conjugators_budgeted(x, y, max_len, DEFAULT_NODE_BUDGET)
}

pub fn brute_conjugators_budgeted(
    x: &BraidWord,
    y: &BraidWord,
    max_len: usize,
    node_budget: usize,
) -> Result<BruteResult, OracleError> {
    if x.strands() != y.strands() {
        return Err(OracleError::StrandMismatch(x.strands(), y.strands()));
    }
    let n = x.strands();
    // conjugation preserves the exponent sum
    if x.exponent_sum() != y.exponent_sum() {
        return Ok(BruteResult {
            words: Vec::new(),
            partial: false,
        });
    }
    let order = letter_order(n);
    let mut words = Vec::new();
    let mut partial = false;
    let mut nodes = 0usize;
    let mut current: Vec<i32> = Vec::new();

    fn visit(
        current: &mut Vec<i32>,
        depth_left: usize,
        order: &[i32],
        n: usize,
        x: &BraidWord,
        y: &BraidWord,
        words: &mut Vec<BraidWord>,
        nodes: &mut usize,
        node_budget: usize,
        partial: &mut bool,
    ) {
        if *partial {
            return;
        }
        *nodes += 1;
        if *nodes > node_budget {
            *partial = true;
            return;
        }
        let g = BraidWord::new(n, current.clone()).expect("letters in range");
        let conj = BraidWord::conjugate(&g, x).expect("same strands");
        if equal(&conj, y).expect("same strands") {
            words.push(g);
        }
        if depth_left == 0 {
            return;
        }
        for &l in order {
            if current.last() == Some(&-l) {
                continue;
            }
            current.push(l);
            visit(
                current,
                depth_left - 1,
                order,
                n,
                x,
                y,
                words,
                nodes,
                node_budget,
                partial,
            );
            current.pop();
        }
    }

    visit(
        &mut current,
        max_len,
        &order,
        n,
        x,
        y,
        &mut words,
        &mut nodes,
        node_budget,
        &mut partial,
    );
    Ok(BruteResult { words, partial })
}

/// All freely reduced words up to max_len commuting with u.
pub fn brute_centralizer(u: &BraidWord, max_len: usize) -> Result<BruteResult, OracleError> {
    brute_conjugators(u, u, max_len)
}
