use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::featurex::FeatureMatrix;
use crate::learners::TrainedModel;
use crate::{par, rng};

fn accuracy(pred: &[usize], truth: &[usize]) -> f64 {
    pred.iter().zip(truth).filter(|(p, t)| p == t).count() as f64 / truth.len() as f64
}

/// Mean accuracy drop when one column of `x` is shuffled, over `repeats`
/// seeded shuffles. Sorted by importance, descending, then by name.
pub fn permutation_importance(
    model: &TrainedModel,
    x: &FeatureMatrix,
    repeats: usize,
    seed: u64,
) -> Result<Vec<(String, f64)>> {
    if repeats == 0 {
        return Err(Error::Invalid(
            "permutation importance needs at least one repeat".into(),
        ));
    }
    if x.n_rows() == 0 {
        return Err(Error::Invalid("permutation importance on an empty matrix".into()));
    }
    let base = accuracy(&model.predict(x)?, x.labels());
    let d = x.n_cols();
    let cols: Vec<usize> = (0..d).collect();
    let drops = par::try_map(&cols, |&j| {
        let mut r = rng::derived_rng(seed, "permutation", j as u64);
        let mut shuffled = x.clone();
        let original: Vec<f64> = x.column(j).collect();
        let mut total = 0.0;
        for _ in 0..repeats {
            let mut col = original.clone();
            col.shuffle(&mut r);
            for (row, v) in shuffled.data_mut().chunks_mut(d).zip(&col) {
                row[j] = *v;
            }
            total += base - accuracy(&model.predict(&shuffled)?, x.labels());
        }
        Ok::<f64, Error>(total / repeats as f64)
    })?;
    let mut ranked: Vec<(String, f64)> = x.names().iter().cloned().zip(drops).collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(ranked)
}
