//! Univariate feature selection: one-way ANOVA F-test per column against
//! the class label, Benjamini-Hochberg false-discovery control, and a
//! top-k floor when too few features pass.

use statrs::distribution::{ContinuousCDF, FisherSnedecor};

use super::matrix::FeatureMatrix;
use crate::error::{Error, Result};

pub const FDR_Q: f64 = 0.05;
/// Below this many passing features the fallback floor engages.
pub const MIN_PASSING: usize = 8;
/// Number of smallest-p features kept by the fallback floor.
pub const FALLBACK_KEEP: usize = 32;

/// Names of the selected columns, in original column order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSelector {
    pub selected: Vec<String>,
    /// p-value per input column; `None` for constant columns.
    pub p_values: Vec<Option<f64>>,
    /// How many columns passed the FDR test before the floor.
    pub n_passing: usize,
}

fn is_constant(col: &[f64]) -> bool {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in col {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    hi - lo <= 1e-12 * lo.abs().max(hi.abs()).max(1.0)
}

/// One-way ANOVA F-test p-value of `col` grouped by `labels`.
fn anova_p(col: &[f64], labels: &[usize], n_classes: usize) -> f64 {
    let mut sum = vec![0.0; n_classes];
    let mut count = vec![0usize; n_classes];
    for (&v, &l) in col.iter().zip(labels) {
        sum[l] += v;
        count[l] += 1;
    }
    let n = col.len() as f64;
    let k = count.iter().filter(|&&c| c > 0).count();
    let grand = sum.iter().sum::<f64>() / n;
    let means: Vec<f64> = sum
        .iter()
        .zip(&count)
        .map(|(s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
        .collect();
    let ssb: f64 = means
        .iter()
        .zip(&count)
        .map(|(m, &c)| c as f64 * (m - grand) * (m - grand))
        .sum();
    let ssw: f64 = col
        .iter()
        .zip(labels)
        .map(|(v, &l)| (v - means[l]) * (v - means[l]))
        .sum();
    let df1 = (k - 1) as f64;
    let df2 = n - k as f64;
    if df2 <= 0.0 {
        return 1.0;
    }
    // within-class spread at rounding level of the between-class spread
    if ssw <= 1e-24 * ssb.max(f64::MIN_POSITIVE) || ssw == 0.0 {
        return if ssb > 0.0 { 0.0 } else { 1.0 };
    }
    let f = (ssb / df1) / (ssw / df2);
    match FisherSnedecor::new(df1, df2) {
        Ok(dist) => dist.sf(f).clamp(0.0, 1.0),
        Err(_) => 1.0,
    }
}

/// ANOVA p-value per column; `None` for constant columns.
pub fn anova_p_values(m: &FeatureMatrix) -> Vec<Option<f64>> {
    let labels = m.labels();
    let cols: Vec<usize> = (0..m.n_cols()).collect();
    crate::par::map(&cols, |&j| {
        let col: Vec<f64> = m.column(j).collect();
        if is_constant(&col) {
            None
        } else {
            Some(anova_p(&col, labels, m.n_classes()))
        }
    })
}

impl FeatureSelector {
    pub fn fit(train: &FeatureMatrix) -> Result<Self> {
        let present = train.classes_present();
        if present < 2 {
            return Err(Error::SingleClass(present));
        }
        let p_values = anova_p_values(train);
        let mut ranked: Vec<(f64, usize)> = p_values
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.map(|p| (p, j)))
            .collect();
        ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let m = ranked.len();
        let n_passing = ranked
            .iter()
            .enumerate()
            .filter(|(r, (p, _))| *p <= (r + 1) as f64 / m as f64 * FDR_Q)
            .map(|(r, _)| r + 1)
            .max()
            .unwrap_or(0);
        let keep = if n_passing < MIN_PASSING {
            FALLBACK_KEEP.min(m)
        } else {
            n_passing
        };
        let mut cols: Vec<usize> = ranked[..keep].iter().map(|&(_, j)| j).collect();
        cols.sort_unstable();
        Ok(FeatureSelector {
            selected: cols.iter().map(|&j| train.names()[j].clone()).collect(),
            p_values,
            n_passing,
        })
    }

    pub fn apply(&self, m: &FeatureMatrix) -> Result<FeatureMatrix> {
        m.select_named(&self.selected)
    }
}

/// Fits the selector on `train` and returns the selected names.
pub fn select_features(train: &FeatureMatrix) -> Result<Vec<String>> {
    FeatureSelector::fit(train).map(|s| s.selected)
}
