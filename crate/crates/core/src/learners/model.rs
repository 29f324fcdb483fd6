use serde::{Deserialize, Serialize};

use super::forest::RandomForest;
use super::hyper::{Hyperparams, ModelKind};
use super::knn::Knn;
use super::mlp::Mlp;
use super::tree::DecisionTree;
use crate::error::{Error, Result};
use crate::featurex::FeatureMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelState {
    Dt(DecisionTree),
    Knn(Knn),
    Mlp(Mlp),
    Rf(RandomForest),
}

/// A fitted classifier together with the feature names and classes it
/// was trained on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub params: Hyperparams,
    pub feature_names: Vec<String>,
    pub classes: Vec<String>,
    pub state: ModelState,
}

pub(crate) fn fit_rows(
    data: &[f64],
    d: usize,
    labels: &[usize],
    n_classes: usize,
    params: Hyperparams,
    seed: u64,
) -> ModelState {
    match params {
        Hyperparams::Dt { criterion, max_depth } => ModelState::Dt(DecisionTree::fit_rows(
            data,
            d,
            labels,
            n_classes,
            criterion,
            Some(max_depth),
        )),
        Hyperparams::Knn { k, weighting } => ModelState::Knn(Knn::fit_rows(data, d, labels, n_classes, k, weighting)),
        Hyperparams::Mlp { hidden } => ModelState::Mlp(Mlp::fit_rows(data, d, labels, n_classes, hidden, seed)),
        Hyperparams::Rf { n_estimators } => {
            ModelState::Rf(RandomForest::fit_rows(data, d, labels, n_classes, n_estimators, seed))
        }
    }
}

impl ModelState {
    pub fn predict_rows(&self, data: &[f64], d: usize) -> Vec<usize> {
        match self {
            ModelState::Dt(t) => data.chunks(d.max(1)).map(|r| t.predict_row(r)).collect(),
            ModelState::Rf(f) => {
                let rows: Vec<&[f64]> = data.chunks(d.max(1)).collect();
                crate::par::map(&rows, |r| f.predict_row(r))
            }
            ModelState::Knn(k) => k.predict_rows(data),
            ModelState::Mlp(m) => m.predict_rows(data),
        }
    }
}

/// Fits `params` on every row of `x`.
pub fn train(x: &FeatureMatrix, params: Hyperparams, seed: u64) -> Result<TrainedModel> {
    params.validate()?;
    if x.n_rows() == 0 {
        return Err(Error::Invalid("cannot train on an empty matrix".into()));
    }
    if x.classes_present() < 2 {
        return Err(Error::SingleClass(x.classes_present()));
    }
    Ok(TrainedModel {
        params,
        feature_names: x.names().to_vec(),
        classes: x.classes().to_vec(),
        state: fit_rows(x.data(), x.n_cols(), x.labels(), x.n_classes(), params, seed),
    })
}

impl TrainedModel {
    pub fn kind(&self) -> ModelKind {
        self.params.kind()
    }

    /// Predicts class codes; `x` must carry exactly the training features
    /// in the same order.
    pub fn predict(&self, x: &FeatureMatrix) -> Result<Vec<usize>> {
        if x.names() != self.feature_names.as_slice() {
            let missing = self
                .feature_names
                .iter()
                .filter(|n| !x.names().contains(n))
                .cloned()
                .collect();
            let extra = x
                .names()
                .iter()
                .filter(|n| !self.feature_names.contains(n))
                .cloned()
                .collect();
            return Err(Error::FeatureMismatch { missing, extra });
        }
        Ok(self.state.predict_rows(x.data(), x.n_cols()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::{Criterion, Weighting};

    fn toy() -> FeatureMatrix {
        let data = vec![0.0, 1.0, 0.1, 0.9, 1.0, 0.0, 0.9, 0.1, 0.05, 0.95, 0.95, 0.05];
        let labels = vec![0, 0, 1, 1, 0, 1];
        FeatureMatrix::from_codes(vec!["a".into(), "b".into()], data, labels, vec!["x".into(), "y".into()]).unwrap()
    }

    #[test]
    fn mismatched_features_rejected() {
        let x = toy();
        let m = train(
            &x,
            Hyperparams::Dt {
                criterion: Criterion::Gini,
                max_depth: 3,
            },
            0,
        )
        .unwrap();
        let swapped = x.select_columns(&[1, 0]);
        assert!(m.predict(&swapped).is_err());
        let dropped = x.select_columns(&[0]);
        match m.predict(&dropped) {
            Err(Error::FeatureMismatch { missing, extra }) => {
                assert_eq!(missing, vec!["b".to_string()]);
                assert!(extra.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn every_kind_fits_toy() {
        let x = toy();
        for p in [
            Hyperparams::Dt {
                criterion: Criterion::Entropy,
                max_depth: 3,
            },
            Hyperparams::Knn {
                k: 1,
                weighting: Weighting::Uniform,
            },
            Hyperparams::Rf { n_estimators: 100 },
        ] {
            let m = train(&x, p, 1).unwrap();
            assert_eq!(m.predict(&x).unwrap(), x.labels(), "{p}");
        }
    }

    #[test]
    fn single_class_rejected() {
        let x = toy().with_labels(vec![0; 6]);
        assert!(matches!(
            train(&x, Hyperparams::Rf { n_estimators: 100 }, 0),
            Err(Error::SingleClass(_))
        ));
    }
}
