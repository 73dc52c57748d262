//! Recovery of the hidden generator-index families from a conjugator
//! candidate: un-conjugate the published words and test every Artin
//! generator for commutation against each family.

use serde::{Deserialize, Serialize};

use aagl_ttp::{Family, MSCSPvInstance};
use braid_core::{equal_mod_delta_sq, BraidError, BraidWord};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecovery {
    /// Indices commuting with every recovered v word (left-family side).
    pub bl: Vec<usize>,
    /// Indices commuting with every recovered w word (right-family side).
    pub br: Vec<usize>,
    /// Indices that satisfied both tests: genuine over-approximation.
    pub ambiguous: Vec<usize>,
    /// True when a family was empty, making every test vacuous.
    pub degenerate: bool,
}

pub fn recover_subgroups(
    inst: &MSCSPvInstance,
    z_candidate: &BraidWord,
) -> Result<SubgroupRecovery, BraidError> {
    let n = inst.n;
    let z_inv = z_candidate.inverse();
    let unconj = |fam: Family| -> Result<Vec<BraidWord>, BraidError> {
        inst.family(fam)
            .map(|y| BraidWord::conjugate(&z_inv, y))
            .collect()
    };
    let ws = unconj(Family::W)?;
    let vs = unconj(Family::V)?;

    let commutes_with_all = |gen: &BraidWord, words: &[BraidWord]| -> Result<bool, BraidError> {
        for w in words {
            if !equal_mod_delta_sq(&gen.product(w)?, &w.product(gen)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let mut out = SubgroupRecovery {
        degenerate: ws.is_empty() || vs.is_empty(),
        ..Default::default()
    };
    for r in 1..n {
        let gen = BraidWord::generator(n, r as i32)?;
        let with_vs = commutes_with_all(&gen, &vs)?;
        let with_ws = commutes_with_all(&gen, &ws)?;
        if with_vs {
            out.bl.push(r);
        }
        if with_ws {
            out.br.push(r);
        }
        if with_vs && with_ws {
            out.ambiguous.push(r);
        }
    }
    Ok(out)
}
