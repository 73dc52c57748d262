use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use aagl_ttp::{TTPParams, TtpError, Verdict};
use braid_core::BraidError;
use mscspv_attacks::{AttackConfig, Outcome};
use shifted_conjugacy::MssdpConfig;

use crate::run::RunRecord;

/// Environment variable overriding the default artifact directory.
pub const OUT_DIR_ENV: &str = "BRAIDBREAK_OUT";

/// Resolve the output directory: explicit flag, then environment
/// variable, then ./artifacts.
pub fn default_out_dir(explicit: Option<PathBuf>) -> PathBuf {
    explicit
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("artifacts"))
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment spec: {0}")]
    BadSpec(String),
    #[error("run {run}: report claims solved but its equations fail exact verification")]
    SoundnessBreach { run: usize },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("bad artifact {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Ttp(#[from] TtpError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Oracle(#[from] word_oracle::OracleError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Centralizer,
    General,
    Length,
    CeSubgroup,
    CePartial,
    Mssdp,
    Mssdpv,
    Dsc,
}

impl Strategy {
    /// Strategies over published conjugacy instances, as opposed to
    /// shifted decomposition systems.
    pub fn is_conjugacy(self) -> bool {
        !matches!(self, Strategy::Mssdp | Strategy::Mssdpv | Strategy::Dsc)
    }
}

/// Secret-sampling parameters for shifted decomposition experiments.
/// Each c-pair differs by one extra generator letter, so the hidden-c
/// solver's short-guess enumeration has a chance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedParams {
    pub n: usize,
    pub w_len: usize,
    pub x_len: usize,
    pub c_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamsSource {
    /// Generate a fresh key per run from these parameters (the per-run
    /// seed overrides the embedded one).
    Ttp(TTPParams),
    /// Sample shifted-decomposition secrets per run.
    Shifted(ShiftedParams),
    /// Attack a fixed instance file each run (no ground truth available).
    Instance(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub strategy: Strategy,
    pub params: ParamsSource,
    #[serde(default)]
    pub attack: AttackConfig,
    #[serde(default)]
    pub solver: MssdpConfig,
    pub repetitions: usize,
    #[serde(default)]
    pub seed_base: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    /// Test hook: publish with the identity conjugator.
    #[serde(default)]
    pub force_identity_z: bool,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.repetitions < 1 {
            return Err(HarnessError::BadSpec("repetitions must be >= 1".into()));
        }
        match (&self.params, self.strategy.is_conjugacy()) {
            (ParamsSource::Ttp(p), true) => p.validate().map_err(HarnessError::Ttp),
            (ParamsSource::Shifted(sp), false) => {
                if sp.n < 3 {
                    return Err(HarnessError::BadSpec("shifted params need n >= 3".into()));
                }
                Ok(())
            }
            (ParamsSource::Instance(path), _) => {
                if !path.exists() {
                    return Err(HarnessError::BadSpec(format!(
                        "instance file {} not found",
                        path.display()
                    )));
                }
                Ok(())
            }
            (ParamsSource::Ttp(_), false) => Err(HarnessError::BadSpec(
                "shifted strategies need shifted or instance params".into(),
            )),
            (ParamsSource::Shifted(_), true) => Err(HarnessError::BadSpec(
                "conjugacy strategies need ttp or instance params".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub spec: ExperimentSpec,
    pub runs: Vec<RunRecord>,
    pub successes: usize,
    pub verdict_hist: BTreeMap<String, usize>,
    pub outcome_hist: BTreeMap<String, usize>,
    pub mean_o1: f64,
    pub mean_cdp_calls: f64,
    pub mean_candidates_tried: f64,
    pub mean_wall_ms: f64,
}

impl BatchSummary {
    pub fn from_runs(spec: ExperimentSpec, runs: Vec<RunRecord>) -> BatchSummary {
        let len = runs.len().max(1) as f64;
        let mut verdict_hist = BTreeMap::new();
        let mut outcome_hist = BTreeMap::new();
        for r in &runs {
            if let Some(v) = r.verdict {
                *verdict_hist.entry(verdict_name(v).to_string()).or_insert(0) += 1;
            }
            *outcome_hist
                .entry(outcome_name(r.outcome).to_string())
                .or_insert(0) += 1;
        }
        BatchSummary {
            successes: runs.iter().filter(|r| r.success).count(),
            mean_o1: runs.iter().map(|r| r.o1 as f64).sum::<f64>() / len,
            mean_cdp_calls: runs.iter().map(|r| r.cdp_calls as f64).sum::<f64>() / len,
            mean_candidates_tried: runs.iter().map(|r| r.candidates_tried as f64).sum::<f64>()
                / len,
            mean_wall_ms: runs.iter().map(|r| r.wall_ms as f64).sum::<f64>() / len,
            verdict_hist,
            outcome_hist,
            spec,
            runs,
        }
    }

    /// Copy with every timing field zeroed, for determinism comparisons.
    pub fn normalized(&self) -> BatchSummary {
        BatchSummary {
            mean_wall_ms: 0.0,
            runs: self.runs.iter().map(RunRecord::normalized).collect(),
            ..self.clone()
        }
    }

    /// Exit code convention: 0 all solved, 2 none, 3 some.
    pub fn exit_code(&self) -> i32 {
        if self.successes == self.runs.len() {
            0
        } else if self.successes == 0 {
            2
        } else {
            3
        }
    }
}

pub(crate) fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Invalid => "invalid",
        Verdict::Equivalent => "equivalent",
        Verdict::Exact => "exact",
    }
}

pub(crate) fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Solved => "solved",
        Outcome::Partial => "partial",
        Outcome::Failed => "failed",
    }
}
