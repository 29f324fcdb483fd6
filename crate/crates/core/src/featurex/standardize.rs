use serde::{Deserialize, Serialize};

use super::matrix::FeatureMatrix;

const STD_EPS: f64 = 1e-12;

/// Column z-scoring with train statistics (population std; near-zero std
/// is treated as 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    /// Fits on a row-major slice with `d` columns.
    pub fn fit_rows(data: &[f64], d: usize) -> Self {
        let n = data.len().checked_div(d).unwrap_or(0);
        let mut means = vec![0.0; d];
        let mut stds = vec![1.0; d];
        if n == 0 {
            return Standardizer { means, stds };
        }
        for row in data.chunks(d) {
            for (m, v) in means.iter_mut().zip(row) {
                *m += v;
            }
        }
        means.iter_mut().for_each(|m| *m /= n as f64);
        let mut var = vec![0.0; d];
        for row in data.chunks(d) {
            for ((s, v), m) in var.iter_mut().zip(row).zip(&means) {
                *s += (v - m) * (v - m);
            }
        }
        for (s, v) in stds.iter_mut().zip(var) {
            let sd = (v / n as f64).sqrt();
            *s = if sd < STD_EPS { 1.0 } else { sd };
        }
        Standardizer { means, stds }
    }

    pub fn fit(train: &FeatureMatrix) -> Self {
        Self::fit_rows(train.data(), train.n_cols())
    }

    pub fn transform_rows(&self, data: &mut [f64]) {
        let d = self.means.len();
        if d == 0 {
            return;
        }
        for row in data.chunks_mut(d) {
            for ((v, m), s) in row.iter_mut().zip(&self.means).zip(&self.stds) {
                *v = (*v - m) / s;
            }
        }
    }

    pub fn transform_row(&self, row: &[f64], out: &mut [f64]) {
        for (((o, v), m), s) in out.iter_mut().zip(row).zip(&self.means).zip(&self.stds) {
            *o = (v - m) / s;
        }
    }

    pub fn apply(&self, m: &mut FeatureMatrix) {
        assert_eq!(m.n_cols(), self.means.len(), "standardizer width");
        self.transform_rows(m.data_mut());
    }
}

/// Fits on `train`, then transforms `train` and every other matrix.
pub fn standardize_fit_apply(train: &mut FeatureMatrix, others: &mut [&mut FeatureMatrix]) -> Standardizer {
    let s = Standardizer::fit(train);
    s.apply(train);
    for m in others.iter_mut() {
        s.apply(m);
    }
    s
}
