use serde::{Deserialize, Serialize};

use braid_core::{BraidWord, LengthKind};
use garside_conjugacy::MscspInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyTag {
    Centralizer,
    General,
    Length,
    CeSubgroup,
    CePartial,
    MscspCe,
    /// Reserved; selecting it yields a failed report with a note.
    DifferentialEvolution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

/// How the length attack turns peeled prefixes into a conjugator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LengthMode {
    /// Pair the peeled prefixes of the two families into conjugacy
    /// equations and solve those.
    PairBased,
    /// Brute-force the short residual left on a peeled prefix and accept
    /// when every published word becomes short under the result.
    ResidualBruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct AttackConfig {
    /// Maximum Artin length of middle-element guesses.
    pub g_a: usize,
    /// Element cap for centralizer samples.
    pub centralizer_budget: usize,
    /// Member cap for summit-set computations.
    pub sss_budget: usize,
    /// Budget handed to conjugacy decisions and searches.
    pub cdp_budget: usize,
    /// Stop once this many verified pairs are collected.
    pub t: usize,
    pub seed: u64,
    pub search_mode: SearchMode,
    /// Draw count in random search mode.
    pub random_draws: usize,
    /// Length function used by the peeling attacks.
    pub length_kind: LengthKind,
    /// Peeling stops when the summed length falls below this.
    pub stop_constant: usize,
    pub length_mode: LengthMode,
    /// Filter centralizer elements to the band between the published
    /// conjugator-length bounds (on by default; the band is a cheap
    /// necessary condition on anything of the form z*a*z^-1).
    pub prefix_bound: bool,
    /// Iteration cap for the partial-factor attack.
    pub max_iterations: usize,
    /// Node cap for correction walks in simultaneous solving.
    pub correction_budget: usize,
}

impl Default for AttackConfig {
    fn default() -> Self {
        AttackConfig {
            g_a: 1,
            centralizer_budget: 64,
            sss_budget: 4_000,
            cdp_budget: 4_000,
            t: 2,
            seed: 0,
            search_mode: SearchMode::Exhaustive,
            random_draws: 500,
            length_kind: LengthKind::CanonicalLength,
            stop_constant: 4,
            length_mode: LengthMode::ResidualBruteForce,
            prefix_bound: true,
            max_iterations: 4,
            correction_budget: 200,
        }
    }
}

impl AttackConfig {
    /// Default middle-length bound for strand count n: max(1, floor(log2 n)).
    pub fn default_g_a(n: usize) -> usize {
        (usize::BITS - 1 - n.leading_zeros()).max(1) as usize
    }

    pub fn for_n(n: usize) -> Self {
        AttackConfig {
            g_a: Self::default_g_a(n),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub candidates_tried: u64,
    pub cdp_calls: u64,
    /// One entry per centralizer sample built, in construction order.
    pub centralizer_sizes: Vec<usize>,
    /// Work tally: per outer loop visit, the sizes of the candidate sets
    /// scanned plus a constant for the fixed per-visit steps.
    pub o1: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Solved,
    Partial,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackReport {
    pub strategy: StrategyTag,
    pub config: AttackConfig,
    pub outcome: Outcome,
    pub candidate_z: Option<BraidWord>,
    /// The exact simultaneous system the attack assembled and solved.
    pub mscsp_built: Option<MscspInstance>,
    /// The (a, b) pairs backing that system.
    pub pairs: Vec<(BraidWord, BraidWord)>,
    pub counters: Counters,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl AttackReport {
    pub fn new(strategy: StrategyTag, config: AttackConfig) -> Self {
        AttackReport {
            strategy,
            config,
            outcome: Outcome::Failed,
            candidate_z: None,
            mscsp_built: None,
            pairs: Vec::new(),
            counters: Counters::default(),
            notes: Vec::new(),
            wall_ms: 0,
        }
    }

    /// Copy with timing zeroed, for determinism comparisons.
    pub fn normalized(&self) -> Self {
        AttackReport {
            wall_ms: 0,
            ..self.clone()
        }
    }
}
