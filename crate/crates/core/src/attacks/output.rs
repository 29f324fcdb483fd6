use std::path::Path;

use super::pipeline::AttackResult;
use crate::error::{Error, Result};

pub const RESULTS_DIR: &str = "results";
pub const SUMMARY_FILE: &str = "summary.csv";

pub fn result_file_name(r: &AttackResult) -> String {
    format!("{}_{}.json", r.spec.objective, r.model_kind)
}

/// Writes `results/<objective>_<kind>.json` per result and `summary.csv`
/// under `out`.
pub fn write_results(out: &Path, results: &[AttackResult]) -> Result<()> {
    let dir = out.join(RESULTS_DIR);
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    for r in results {
        let path = dir.join(result_file_name(r));
        let mut text = serde_json::to_string_pretty(r)?;
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    }
    let path = out.join(SUMMARY_FILE);
    let file = std::fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
    write_summary(file, results)
}

pub fn write_summary<W: std::io::Write>(out: W, results: &[AttackResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["objective", "kind", "accuracy", "macro_f1"])?;
    for r in results {
        w.write_record([
            r.spec.objective.to_string(),
            r.model_kind.to_string(),
            r.report.accuracy.to_string(),
            r.report.macro_f1.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("summary.csv", e))
}
