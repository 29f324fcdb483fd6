use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::hyper::{Criterion, Hyperparams, ModelKind};
use super::knn::Knn;
use super::model::{fit_rows, train, TrainedModel};
use super::tree::DecisionTree;
use crate::error::{Error, Result};
use crate::featurex::FeatureMatrix;
use crate::{par, rng};

pub const CV_FOLDS: usize = 3;

/// Cross-validation score of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvRow {
    pub params: Hyperparams,
    pub fold_accuracy: Vec<f64>,
    pub mean_accuracy: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridResult {
    pub best: Hyperparams,
    pub best_score: f64,
    pub cv: Vec<CvRow>,
    /// `best` refit on the whole training matrix.
    pub model: TrainedModel,
}

/// Fold index per row: each class is shuffled and dealt round-robin.
pub fn stratified_folds(labels: &[usize], classes: &[String], k: usize, seed: u64) -> Result<Vec<usize>> {
    let mut by_class = vec![Vec::new(); classes.len()];
    for (i, &l) in labels.iter().enumerate() {
        by_class[l].push(i);
    }
    let mut r = rng::derived_rng(seed, "cv-folds", 0);
    let mut fold = vec![0; labels.len()];
    for (c, rows) in by_class.iter_mut().enumerate() {
        if rows.is_empty() {
            continue;
        }
        if rows.len() < k {
            return Err(Error::ClassTooSmall {
                class: classes[c].clone(),
                count: rows.len(),
                needed: k,
            });
        }
        rows.shuffle(&mut r);
        for (j, &i) in rows.iter().enumerate() {
            fold[i] = j % k;
        }
    }
    Ok(fold)
}

enum Task {
    /// DT configs sharing a criterion: grow once, truncate per depth.
    Tree(Criterion, Vec<usize>),
    /// KNN configs: one neighbour search at the largest k.
    Knn(Vec<usize>),
    Single(usize),
}

fn accuracy(pred: impl Iterator<Item = usize>, truth: &[usize]) -> f64 {
    let hits = pred.zip(truth).filter(|(p, t)| p == *t).count();
    hits as f64 / truth.len() as f64
}

/// Stratified cross-validation over `configs`, then a refit of the best on
/// all of `x`. Ties keep the earliest config.
pub fn grid_search_configs(x: &FeatureMatrix, configs: &[Hyperparams], seed: u64) -> Result<GridResult> {
    if configs.is_empty() {
        return Err(Error::Invalid("empty hyperparameter grid".into()));
    }
    if x.classes_present() < 2 {
        return Err(Error::SingleClass(x.classes_present()));
    }
    let fold = stratified_folds(x.labels(), x.classes(), CV_FOLDS, seed)?;

    let mut tasks = Vec::new();
    for crit in [Criterion::Gini, Criterion::Entropy] {
        let idx: Vec<usize> = (0..configs.len())
            .filter(|&i| matches!(configs[i], Hyperparams::Dt { criterion, .. } if criterion == crit))
            .collect();
        if !idx.is_empty() {
            tasks.push(Task::Tree(crit, idx));
        }
    }
    let knn: Vec<usize> = (0..configs.len())
        .filter(|&i| configs[i].kind() == ModelKind::Knn)
        .collect();
    if !knn.is_empty() {
        tasks.push(Task::Knn(knn));
    }
    for (i, c) in configs.iter().enumerate() {
        if matches!(c.kind(), ModelKind::Mlp | ModelKind::Rf) {
            tasks.push(Task::Single(i));
        }
    }

    let d = x.n_cols();
    let nc = x.n_classes();
    let jobs: Vec<(usize, &Task)> = (0..CV_FOLDS).flat_map(|f| tasks.iter().map(move |t| (f, t))).collect();
    let results = par::map(&jobs, |&(f, task)| {
        let train_idx: Vec<usize> = (0..x.n_rows()).filter(|&i| fold[i] != f).collect();
        let test_idx: Vec<usize> = (0..x.n_rows()).filter(|&i| fold[i] == f).collect();
        let tr = x.select_rows(&train_idx);
        let te = x.select_rows(&test_idx);
        let fold_seed = rng::derive(seed, "cv-fit", f as u64);
        let scores: Vec<(usize, f64)> = match task {
            Task::Tree(crit, idx) => {
                let depth_of = |i: usize| match configs[i] {
                    Hyperparams::Dt { max_depth, .. } => max_depth,
                    _ => unreachable!(),
                };
                let deepest = idx.iter().map(|&i| depth_of(i)).max().unwrap_or(1);
                let tree = DecisionTree::fit_rows(tr.data(), d, tr.labels(), nc, *crit, Some(deepest));
                idx.iter()
                    .map(|&i| {
                        let dep = depth_of(i);
                        (
                            i,
                            accuracy(te.rows().map(|r| tree.predict_row_at_depth(r, dep)), te.labels()),
                        )
                    })
                    .collect()
            }
            Task::Knn(idx) => {
                let kmax = idx
                    .iter()
                    .map(|&i| match configs[i] {
                        Hyperparams::Knn { k, .. } => k,
                        _ => unreachable!(),
                    })
                    .max()
                    .unwrap_or(1);
                let model = Knn::fit_rows(tr.data(), d, tr.labels(), nc, kmax, super::Weighting::Uniform);
                let lists = model.neighbour_lists(te.data(), kmax);
                idx.iter()
                    .map(|&i| {
                        let Hyperparams::Knn { k, weighting } = configs[i] else {
                            unreachable!()
                        };
                        (
                            i,
                            accuracy(lists.iter().map(|n| model.vote(n, k, weighting)), te.labels()),
                        )
                    })
                    .collect()
            }
            Task::Single(i) => {
                let m = fit_rows(tr.data(), d, tr.labels(), nc, configs[*i], fold_seed);
                vec![(*i, accuracy(m.predict_rows(te.data(), d).into_iter(), te.labels()))]
            }
        };
        (f, scores)
    });

    let mut table = vec![vec![0.0; CV_FOLDS]; configs.len()];
    for (f, scores) in results {
        for (i, a) in scores {
            table[i][f] = a;
        }
    }
    let cv: Vec<CvRow> = configs
        .iter()
        .zip(table)
        .map(|(&params, fold_accuracy)| CvRow {
            params,
            mean_accuracy: fold_accuracy.iter().sum::<f64>() / CV_FOLDS as f64,
            fold_accuracy,
        })
        .collect();
    let mut best = 0;
    for i in 1..cv.len() {
        if cv[i].mean_accuracy > cv[best].mean_accuracy {
            best = i;
        }
    }
    let model = train(x, cv[best].params, seed)?;
    Ok(GridResult {
        best: cv[best].params,
        best_score: cv[best].mean_accuracy,
        cv,
        model,
    })
}

/// Grid search over the full documented grid of `kind`.
pub fn grid_search(x: &FeatureMatrix, kind: ModelKind, seed: u64) -> Result<GridResult> {
    grid_search_configs(x, &Hyperparams::grid(kind), seed)
}
