use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::argmax_lowest;
use super::hyper::Criterion;
use super::tree::{Columns, DecisionTree, TreeParams};
use crate::{par, rng};

/// Bagged gini trees with `ceil(sqrt(d))` candidate features per split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForest {
    trees: Vec<DecisionTree>,
    n_classes: usize,
}

impl RandomForest {
    pub(crate) fn fit(cols: &Columns, labels: &[usize], n_classes: usize, n_estimators: usize, seed: u64) -> Self {
        let n = labels.len();
        let d = cols.n_features();
        let params = TreeParams {
            criterion: Criterion::Gini,
            max_depth: None,
            max_features: Some((d as f64).sqrt().ceil() as usize),
        };
        let trees = par::map_range(n_estimators, |t| {
            let mut r = rng::derived_rng(seed, "rf-tree", t as u64);
            let bootstrap: Vec<usize> = (0..n).map(|_| r.gen_range(0..n)).collect();
            DecisionTree::fit(cols, labels, n_classes, &bootstrap, params, Some(&mut r))
        });
        RandomForest { trees, n_classes }
    }

    pub fn fit_rows(
        data: &[f64],
        d: usize,
        labels: &[usize],
        n_classes: usize,
        n_estimators: usize,
        seed: u64,
    ) -> Self {
        Self::fit(&Columns::from_rows(data, d), labels, n_classes, n_estimators, seed)
    }

    /// Majority vote over trees; ties go to the lowest class index.
    pub fn predict_row(&self, row: &[f64]) -> usize {
        let mut votes = vec![0usize; self.n_classes];
        for t in &self.trees {
            votes[t.predict_row(row)] += 1;
        }
        argmax_lowest(&votes)
    }

    pub fn trees(&self) -> &[DecisionTree] {
        &self.trees
    }
}
