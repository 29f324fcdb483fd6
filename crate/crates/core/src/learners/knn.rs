use serde::{Deserialize, Serialize};

use super::argmax_lowest;
use super::hyper::Weighting;
use crate::featurex::Standardizer;
use crate::par;

/// One neighbour of a query: squared distance and training row.
pub(crate) type Neighbour = (f64, usize);

/// k-nearest neighbours on standardized rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knn {
    scaler: Standardizer,
    train: Vec<f64>,
    labels: Vec<usize>,
    d: usize,
    n_classes: usize,
    k: usize,
    weighting: Weighting,
}

impl Knn {
    pub fn fit_rows(
        data: &[f64],
        d: usize,
        labels: &[usize],
        n_classes: usize,
        k: usize,
        weighting: Weighting,
    ) -> Self {
        let scaler = Standardizer::fit_rows(data, d);
        let mut train = data.to_vec();
        scaler.transform_rows(&mut train);
        Knn {
            scaler,
            train,
            labels: labels.to_vec(),
            d,
            n_classes,
            k,
            weighting,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The `kmax` nearest training rows to a raw (unscaled) query, nearest
    /// first; equal distances are ordered by training index.
    pub(crate) fn neighbours(&self, row: &[f64], kmax: usize, scratch: &mut Vec<f64>) -> Vec<Neighbour> {
        scratch.resize(self.d, 0.0);
        self.scaler.transform_row(row, scratch);
        let kmax = kmax.min(self.labels.len());
        let mut best: Vec<Neighbour> = Vec::with_capacity(kmax + 1);
        for (i, t) in self.train.chunks(self.d.max(1)).enumerate() {
            let dist: f64 = t.iter().zip(scratch.iter()).map(|(a, b)| (a - b) * (a - b)).sum();
            if best.len() == kmax && dist >= best[kmax - 1].0 {
                continue;
            }
            // strict comparison keeps the earlier index ahead on ties
            let pos = best.partition_point(|&(bd, _)| bd <= dist);
            best.insert(pos, (dist, i));
            best.truncate(kmax);
        }
        best
    }

    /// Vote among the first `k` of a sorted neighbour list.
    pub(crate) fn vote(&self, neigh: &[Neighbour], k: usize, weighting: Weighting) -> usize {
        let neigh = &neigh[..k.min(neigh.len())];
        let mut w = vec![0.0f64; self.n_classes];
        match weighting {
            Weighting::Uniform => neigh.iter().for_each(|&(_, i)| w[self.labels[i]] += 1.0),
            Weighting::Distance => {
                if neigh.iter().any(|&(d, _)| d == 0.0) {
                    neigh
                        .iter()
                        .filter(|&&(d, _)| d == 0.0)
                        .for_each(|&(_, i)| w[self.labels[i]] += 1.0);
                } else {
                    neigh.iter().for_each(|&(d, i)| w[self.labels[i]] += 1.0 / d.sqrt());
                }
            }
        }
        argmax_lowest(&w)
    }

    pub fn predict_row(&self, row: &[f64]) -> usize {
        let n = self.neighbours(row, self.k, &mut Vec::new());
        self.vote(&n, self.k, self.weighting)
    }

    pub fn predict_rows(&self, data: &[f64]) -> Vec<usize> {
        let rows: Vec<&[f64]> = data.chunks(self.d.max(1)).collect();
        par::map(&rows, |r| self.predict_row(r))
    }

    /// Neighbour lists for every query row, for scoring many `k` at once.
    pub(crate) fn neighbour_lists(&self, data: &[f64], kmax: usize) -> Vec<Vec<Neighbour>> {
        let rows: Vec<&[f64]> = data.chunks(self.d.max(1)).collect();
        par::map(&rows, |r| self.neighbours(r, kmax, &mut Vec::new()))
    }
}
