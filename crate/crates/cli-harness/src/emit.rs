use std::fs;
use std::path::{Path, PathBuf};

use crate::spec::{outcome_name, verdict_name, BatchSummary, HarnessError};

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), HarnessError> {
    fs::write(path, bytes).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Plain-text success/counter table; header-only when the batch is empty.
pub fn summary_table(batch: &BatchSummary) -> String {
    let mut out = String::from("run  seed  outcome  verdict  success  o1  cdp_calls  candidates  wall_ms\n");
    for r in &batch.runs {
        out.push_str(&format!(
            "{}  {}  {}  {}  {}  {}  {}  {}  {}\n",
            r.run,
            r.seed,
            outcome_name(r.outcome),
            r.verdict.map_or("-", verdict_name),
            r.success,
            r.o1,
            r.cdp_calls,
            r.candidates_tried,
            r.wall_ms
        ));
    }
    if !batch.runs.is_empty() {
        out.push_str(&format!(
            "success {}/{}  mean_o1 {:.2}  mean_cdp_calls {:.2}  mean_candidates {:.2}  mean_wall_ms {:.2}\n",
            batch.successes,
            batch.runs.len(),
            batch.mean_o1,
            batch.mean_cdp_calls,
            batch.mean_candidates_tried,
            batch.mean_wall_ms
        ));
    }
    out
}

/// Write one file per run, the machine-readable summary, and the table.
/// Returns the paths written.
pub fn emit_report(batch: &BatchSummary, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(dir).map_err(|source| HarnessError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for r in &batch.runs {
        let path = dir.join(format!("run_{:03}.json", r.run));
        write_bytes(&path, &serde_json::to_vec_pretty(r).expect("record serializes"))?;
        written.push(path);
    }
    let summary = dir.join("summary.json");
    write_bytes(
        &summary,
        &serde_json::to_vec_pretty(batch).expect("summary serializes"),
    )?;
    written.push(summary);
    let table = dir.join("summary.txt");
    write_bytes(&table, summary_table(batch).as_bytes())?;
    written.push(table);
    Ok(written)
}
