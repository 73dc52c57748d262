//! Experiment plumbing behind the command-line front end: seeded batch
//! execution of every attack strategy with ground-truth verification,
//! plus machine-readable and plain-text report emission.

mod emit;
mod run;
mod spec;

pub use emit::{emit_report, summary_table};
pub use run::{run_experiment, RunRecord};
pub use spec::{
    default_out_dir, BatchSummary, ExperimentSpec, HarnessError, ParamsSource, ShiftedParams,
    Strategy, OUT_DIR_ENV,
};
