//! Classifiers (decision tree, random forest, k-nearest neighbours, a
//! one-hidden-layer perceptron), grid search and evaluation metrics.

mod forest;
mod grid;
mod hyper;
mod knn;
mod metrics;
pub mod mlp;
mod model;
mod tree;

pub use forest::RandomForest;
pub use grid::{grid_search, grid_search_configs, stratified_folds, CvRow, GridResult, CV_FOLDS};
pub use hyper::{Criterion, Hyperparams, ModelKind, Weighting};
pub use knn::Knn;
pub use metrics::{evaluate, EvalReport, PerClass};
pub use mlp::{Mlp, MlpNet};
pub use model::{train, ModelState, TrainedModel};
pub use tree::DecisionTree;

/// Index of the largest count; ties go to the lowest index.
pub(crate) fn argmax_lowest<T: PartialOrd + Copy>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}
