use super::matrix::FeatureMatrix;

/// Per-column replacement of non-finite values by the train-column median
/// of finite values (0 for columns without any finite value).
#[derive(Debug, Clone, PartialEq)]
pub struct Imputer {
    pub medians: Vec<f64>,
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

impl Imputer {
    pub fn fit(train: &FeatureMatrix) -> Self {
        let medians = (0..train.n_cols())
            .map(|j| median(train.column(j).filter(|v| v.is_finite()).collect()))
            .collect();
        Imputer { medians }
    }

    pub fn apply(&self, m: &mut FeatureMatrix) {
        let d = m.n_cols();
        assert_eq!(d, self.medians.len(), "imputer width");
        if d == 0 {
            return;
        }
        for row in m.data_mut().chunks_mut(d) {
            for (v, &med) in row.iter_mut().zip(&self.medians) {
                if !v.is_finite() {
                    *v = med;
                }
            }
        }
    }
}

/// Fits medians on `train` and applies them to `train` and every other matrix.
pub fn impute_fit_apply(train: &mut FeatureMatrix, others: &mut [&mut FeatureMatrix]) -> Imputer {
    let imp = Imputer::fit(train);
    imp.apply(train);
    for m in others.iter_mut() {
        imp.apply(m);
    }
    imp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(values: &[f64]) -> FeatureMatrix {
        FeatureMatrix::from_codes(
            vec!["x".into()],
            values.to_vec(),
            vec![0; values.len()],
            vec!["a".into()],
        )
        .unwrap()
    }

    #[test]
    fn nan_becomes_median_of_finite() {
        let mut m = col(&[1.0, f64::NAN, 3.0]);
        impute_fit_apply(&mut m, &mut []);
        assert_eq!(m.column(0).collect::<Vec<_>>(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn finite_matrix_unchanged() {
        let mut m = col(&[1.0, 5.0, 3.0]);
        let before = m.clone();
        impute_fit_apply(&mut m, &mut []);
        assert_eq!(m, before);
    }

    #[test]
    fn test_uses_train_median() {
        let mut train = col(&[7.0, 6.0, 8.0]);
        let mut test = col(&[f64::NAN, f64::INFINITY, 100.0]);
        impute_fit_apply(&mut train, &mut [&mut test]);
        assert_eq!(test.column(0).collect::<Vec<_>>(), vec![7.0, 7.0, 100.0]);
    }

    #[test]
    fn all_nan_column_is_zero() {
        let mut m = col(&[f64::NAN, f64::NEG_INFINITY]);
        impute_fit_apply(&mut m, &mut []);
        assert_eq!(m.column(0).collect::<Vec<_>>(), vec![0.0, 0.0]);
    }
}
