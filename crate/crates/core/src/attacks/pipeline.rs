use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::spec::{AttackSpec, Flow};
use crate::error::{Error, Result};
use crate::featurex::{catalog_matrix, impute_fit_apply, per_sample_matrix, FeatureMatrix, FeatureSelector};
use crate::learners::{evaluate, grid_search, EvalReport, Hyperparams, ModelKind, TrainedModel};
use crate::shield::stratified_reduce;
use crate::telemetry::{split_train_test, stratified_partition, undersample_balance, Dataset};
use crate::{par, rng};

pub const TRAIN_RATIO: f64 = 0.8;
/// Training-row cap used by the command line unless overridden.
pub const DEFAULT_MAX_ROWS: usize = 60_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackOptions {
    pub kinds: Vec<ModelKind>,
    pub seed: u64,
    /// Undersample the training rows to the minority class count.
    pub balance: bool,
    /// Stratified cap on the number of training rows.
    pub max_rows: Option<usize>,
}

impl Default for AttackOptions {
    fn default() -> Self {
        AttackOptions {
            kinds: ModelKind::ALL.to_vec(),
            seed: 42,
            balance: false,
            max_rows: None,
        }
    }
}

/// What the attack saw.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub trips: usize,
    /// Trips per target class.
    pub class_histogram: BTreeMap<String, usize>,
    pub rows: usize,
    pub train_rows: usize,
    pub test_rows: usize,
    pub train_histogram: BTreeMap<String, usize>,
    pub selected_features: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackResult {
    pub spec: AttackSpec,
    pub model_kind: ModelKind,
    pub best_params: Hyperparams,
    pub cv_accuracy: f64,
    pub report: EvalReport,
    pub seed: u64,
    pub balance: bool,
    pub max_rows: Option<usize>,
    pub fingerprint: Fingerprint,
}

/// Train/test matrices after splitting, balancing and feature selection.
#[derive(Debug, Clone)]
pub struct PreparedAttack {
    pub spec: AttackSpec,
    pub train: FeatureMatrix,
    pub test: FeatureMatrix,
    pub selector: FeatureSelector,
    pub fingerprint: Fingerprint,
}

#[derive(Debug, Clone)]
pub struct AttackRun {
    pub result: AttackResult,
    pub model: TrainedModel,
}

/// Feature rows of every trip for `spec`'s flow.
pub fn extract(ds: &Dataset, spec: &AttackSpec) -> Result<FeatureMatrix> {
    let channels = ds.common_channels();
    match spec.flow {
        Flow::PerSample => per_sample_matrix(&ds.trips, &channels, spec.target_label),
        Flow::Catalog => catalog_matrix(&ds.trips, &channels, &spec.window, spec.target_label),
    }
}

fn trip_histogram(ds: &Dataset, spec: &AttackSpec) -> BTreeMap<String, usize> {
    let mut h = BTreeMap::new();
    for t in &ds.trips {
        if let Some(l) = t.labels.get(spec.target_label) {
            *h.entry(l).or_insert(0) += 1;
        }
    }
    h
}

/// Splits by trip: every row of a trip lands on the same side.
fn split_by_trip(rows: &FeatureMatrix, seed: u64) -> Result<(FeatureMatrix, FeatureMatrix)> {
    let mut trip_label = vec![usize::MAX; rows.n_trips()];
    for i in 0..rows.n_rows() {
        trip_label[rows.trip_index(i)] = rows.labels()[i];
    }
    let used: Vec<usize> = (0..trip_label.len()).filter(|&t| trip_label[t] != usize::MAX).collect();
    let labels: Vec<usize> = used.iter().map(|&t| trip_label[t]).collect();
    let (train_t, _) = stratified_partition(&labels, rows.classes(), TRAIN_RATIO, seed)?;
    let train_trips: HashSet<usize> = train_t.into_iter().map(|k| used[k]).collect();
    let (train, test): (Vec<usize>, Vec<usize>) =
        (0..rows.n_rows()).partition(|&i| train_trips.contains(&rows.trip_index(i)));
    Ok((rows.select_rows(&train), rows.select_rows(&test)))
}

/// Split, balance, cap, impute and select on an already extracted matrix.
pub fn prepare_matrix(
    rows: FeatureMatrix,
    spec: &AttackSpec,
    opts: &AttackOptions,
    class_histogram: BTreeMap<String, usize>,
) -> Result<PreparedAttack> {
    let present = rows.classes_present();
    if present < 2 {
        return Err(Error::SingleClass(present));
    }
    let seed = opts.seed;
    let (mut train, mut test) = match spec.flow {
        Flow::PerSample => split_train_test(&rows, TRAIN_RATIO, rng::derive(seed, "split", 0), true)?,
        Flow::Catalog => split_by_trip(&rows, rng::derive(seed, "split", 0))?,
    };
    if opts.balance {
        train = undersample_balance(&train, rng::derive(seed, "balance", 0))?;
    }
    if let Some(cap) = opts.max_rows {
        if train.n_rows() > cap {
            train = stratified_reduce(&train, cap, rng::derive(seed, "cap", 0))?;
        }
    }
    impute_fit_apply(&mut train, &mut [&mut test]);
    let selector = FeatureSelector::fit(&train)?;
    let train = selector.apply(&train)?;
    let test = selector.apply(&test)?;
    let fingerprint = Fingerprint {
        trips: class_histogram.values().sum(),
        class_histogram,
        rows: rows.n_rows(),
        train_rows: train.n_rows(),
        test_rows: test.n_rows(),
        train_histogram: train.class_histogram(),
        selected_features: selector.selected.clone(),
    };
    Ok(PreparedAttack {
        spec: spec.clone(),
        train,
        test,
        selector,
        fingerprint,
    })
}

pub fn prepare(ds: &Dataset, spec: &AttackSpec, opts: &AttackOptions) -> Result<PreparedAttack> {
    let rows = extract(ds, spec)?;
    prepare_matrix(rows, spec, opts, trip_histogram(ds, spec))
}

impl PreparedAttack {
    /// Grid search for `kind` on the training rows, then scoring on test.
    pub fn fit(&self, kind: ModelKind, opts: &AttackOptions) -> Result<AttackRun> {
        let grid = grid_search(&self.train, kind, rng::derive(opts.seed, "grid", 0))?;
        let pred = grid.model.predict(&self.test)?;
        let report = evaluate(self.test.labels(), &pred, self.test.classes());
        Ok(AttackRun {
            result: AttackResult {
                spec: self.spec.clone(),
                model_kind: kind,
                best_params: grid.best,
                cv_accuracy: grid.best_score,
                report,
                seed: opts.seed,
                balance: opts.balance,
                max_rows: opts.max_rows,
                fingerprint: self.fingerprint.clone(),
            },
            model: grid.model,
        })
    }

    pub fn fit_all(&self, opts: &AttackOptions) -> Result<Vec<AttackRun>> {
        par::try_map(&opts.kinds, |&k| self.fit(k, opts))
    }
}

/// Runs `spec` with every model kind in `opts`, returning the fitted models too.
pub fn run_attack_detailed(ds: &Dataset, spec: &AttackSpec, opts: &AttackOptions) -> Result<Vec<AttackRun>> {
    prepare(ds, spec, opts)?.fit_all(opts)
}

pub fn run_attack(ds: &Dataset, spec: &AttackSpec, opts: &AttackOptions) -> Result<Vec<AttackResult>> {
    Ok(run_attack_detailed(ds, spec, opts)?
        .into_iter()
        .map(|r| r.result)
        .collect())
}
