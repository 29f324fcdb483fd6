use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Dt,
    Knn,
    Mlp,
    Rf,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Dt, ModelKind::Knn, ModelKind::Mlp, ModelKind::Rf];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Dt => "dt",
            ModelKind::Knn => "knn",
            ModelKind::Mlp => "mlp",
            ModelKind::Rf => "rf",
        }
    }

    /// Whether the model standardizes its inputs internally.
    pub fn standardizes(self) -> bool {
        matches!(self, ModelKind::Knn | ModelKind::Mlp)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dt" => Ok(ModelKind::Dt),
            "knn" => Ok(ModelKind::Knn),
            "mlp" => Ok(ModelKind::Mlp),
            "rf" => Ok(ModelKind::Rf),
            other => Err(format!("unknown model kind `{other}` (expected dt, knn, mlp or rf)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Gini,
    Entropy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    Uniform,
    Distance,
}

/// One point of a model's hyperparameter grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Hyperparams {
    Dt {
        criterion: Criterion,
        max_depth: usize,
    },
    Knn {
        k: usize,
        weighting: Weighting,
    },
    /// Rectifier hidden layer trained with adaptive-moment updates.
    Mlp {
        hidden: usize,
    },
    /// Gini splits on bootstrap samples.
    Rf {
        n_estimators: usize,
    },
}

pub const DT_DEPTHS: std::ops::RangeInclusive<usize> = 3..=15;
pub const KNN_KS: std::ops::RangeInclusive<usize> = 1..=14;
pub const MLP_HIDDEN: [usize; 2] = [50, 100];
pub const RF_ESTIMATORS: [usize; 2] = [100, 200];

impl Hyperparams {
    pub fn kind(&self) -> ModelKind {
        match self {
            Hyperparams::Dt { .. } => ModelKind::Dt,
            Hyperparams::Knn { .. } => ModelKind::Knn,
            Hyperparams::Mlp { .. } => ModelKind::Mlp,
            Hyperparams::Rf { .. } => ModelKind::Rf,
        }
    }

    /// The search grid in enumeration order (first entry wins ties).
    pub fn grid(kind: ModelKind) -> Vec<Hyperparams> {
        match kind {
            ModelKind::Dt => [Criterion::Gini, Criterion::Entropy]
                .into_iter()
                .flat_map(|criterion| DT_DEPTHS.map(move |max_depth| Hyperparams::Dt { criterion, max_depth }))
                .collect(),
            ModelKind::Knn => KNN_KS
                .flat_map(|k| {
                    [Weighting::Uniform, Weighting::Distance].map(|weighting| Hyperparams::Knn { k, weighting })
                })
                .collect(),
            ModelKind::Mlp => MLP_HIDDEN.iter().map(|&hidden| Hyperparams::Mlp { hidden }).collect(),
            ModelKind::Rf => RF_ESTIMATORS
                .iter()
                .map(|&n_estimators| Hyperparams::Rf { n_estimators })
                .collect(),
        }
    }

    /// Checks the value lies inside the documented grid ranges.
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Hyperparams::Dt { max_depth, .. } => DT_DEPTHS.contains(&max_depth),
            Hyperparams::Knn { k, .. } => KNN_KS.contains(&k),
            Hyperparams::Mlp { hidden } => MLP_HIDDEN.contains(&hidden),
            Hyperparams::Rf { n_estimators } => RF_ESTIMATORS.contains(&n_estimators),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "hyperparameters {self:?} outside the search grid"
            )))
        }
    }
}

impl fmt::Display for Hyperparams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hyperparams::Dt { criterion, max_depth } => write!(f, "dt(criterion={criterion:?}, max_depth={max_depth})"),
            Hyperparams::Knn { k, weighting } => write!(f, "knn(k={k}, weights={weighting:?})"),
            Hyperparams::Mlp { hidden } => write!(f, "mlp(hidden=({hidden},))"),
            Hyperparams::Rf { n_estimators } => write!(f, "rf(n_estimators={n_estimators})"),
        }
    }
}
