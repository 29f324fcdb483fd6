use std::io::Write;

use serde::{Deserialize, Serialize};

use super::aggregate::aggregate_dataset;
use super::reduce::stratified_reduce;
use crate::attacks::{canonical_spec, extract, prepare_matrix, AttackOptions, Flow, Objective};
use crate::error::{Error, Result};
use crate::learners::ModelKind;
use crate::telemetry::Dataset;
use crate::{par, rng};

pub const DEFAULT_SIZES: [usize; 10] = [10, 20, 30, 40, 50, 60, 70, 80, 90, 100];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub window_size: usize,
    pub model_kind: ModelKind,
    pub accuracy: f64,
    pub macro_f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub objective: Objective,
    pub seed: u64,
    pub sizes: Vec<usize>,
    /// Rows every size was reduced to before splitting.
    pub rows_per_size: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn accuracy(&self, size: usize, kind: ModelKind) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.window_size == size && r.model_kind == kind)
            .map(|r| r.accuracy)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["window_size", "model_kind", "accuracy", "macro_f1"])?;
        for r in &self.rows {
            w.write_record([
                r.window_size.to_string(),
                r.model_kind.to_string(),
                r.accuracy.to_string(),
                r.macro_f1.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("sweep csv", e))
    }
}

/// Aggregates every trip at each window size and reruns the per-sample
/// attack, with row counts equalised to the count at the largest size.
pub fn sweep(ds: &Dataset, objective: Objective, sizes: &[usize], opts: &AttackOptions) -> Result<SweepResult> {
    let spec = canonical_spec(objective);
    if spec.flow != Flow::PerSample {
        return Err(Error::Invalid(format!(
            "objective `{objective}` does not use the per-sample flow"
        )));
    }
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.is_empty() || sizes[0] == 0 {
        return Err(Error::Invalid("window sizes must be positive".into()));
    }
    let hist = {
        let mut h = std::collections::BTreeMap::new();
        for t in &ds.trips {
            if let Some(l) = t.labels.get(spec.target_label) {
                *h.entry(l).or_insert(0) += 1;
            }
        }
        h
    };
    let matrices = par::try_map(&sizes, |&w| {
        let agg = if w == 1 { ds.clone() } else { aggregate_dataset(ds, w)? };
        extract(&agg, &spec)
    })?;
    let target = matrices.last().map(|m| m.n_rows()).unwrap_or(0);
    let jobs: Vec<(usize, usize)> = (0..sizes.len())
        .flat_map(|s| (0..opts.kinds.len()).map(move |k| (s, k)))
        .collect();
    let prepared = par::try_map(&matrices, |m| {
        let reduced = stratified_reduce(m, target, rng::derive(opts.seed, "sweep-reduce", 0))?;
        prepare_matrix(reduced, &spec, opts, hist.clone())
    })?;
    let rows = par::try_map(&jobs, |&(s, k)| {
        let run = prepared[s].fit(opts.kinds[k], opts)?;
        Ok::<_, Error>(SweepRow {
            window_size: sizes[s],
            model_kind: opts.kinds[k],
            accuracy: run.result.report.accuracy,
            macro_f1: run.result.report.macro_f1,
        })
    })?;
    Ok(SweepResult {
        objective,
        seed: opts.seed,
        sizes,
        rows_per_size: target,
        rows,
    })
}
