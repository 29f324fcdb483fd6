//! CART-style classification tree.
//!
//! Splits are binary thresholds at midpoints between consecutive distinct
//! feature values, chosen by impurity decrease. Every node records the
//! majority class of its samples, so a tree grown to depth D can also
//! answer as if it had been grown to any shallower depth.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::argmax_lowest;
use super::hyper::Criterion;
use crate::rng::Rng;

const GAIN_EPS: f64 = 1e-12;
const LEAF: u32 = u32::MAX;

/// Column-major copy of a row-major feature block.
#[derive(Debug, Clone)]
pub(crate) struct Columns {
    pub cols: Vec<Vec<f64>>,
}

impl Columns {
    pub fn from_rows(data: &[f64], d: usize) -> Self {
        let n = data.len().checked_div(d).unwrap_or(0);
        let mut cols = vec![Vec::with_capacity(n); d];
        for row in data.chunks(d.max(1)).take(n) {
            for (c, &v) in cols.iter_mut().zip(row) {
                c.push(v);
            }
        }
        Columns { cols }
    }

    pub fn n_features(&self) -> usize {
        self.cols.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct Node {
    feature: u32,
    threshold: f64,
    left: u32,
    right: u32,
    majority: u32,
    depth: u16,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct TreeParams {
    pub criterion: Criterion,
    pub max_depth: Option<usize>,
    /// Candidate features per split; `None` evaluates all in index order.
    pub max_features: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    nodes: Vec<Node>,
    n_classes: usize,
}

fn impurity(counts: &[usize], total: usize, criterion: Criterion) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let t = total as f64;
    match criterion {
        Criterion::Gini => 1.0 - counts.iter().map(|&c| (c as f64 / t).powi(2)).sum::<f64>(),
        Criterion::Entropy => -counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / t;
                p * p.log2()
            })
            .sum::<f64>(),
    }
}

#[derive(Debug, Clone, Copy)]
struct Split {
    gain: f64,
    feature: usize,
    threshold: f64,
}

impl Split {
    fn beats(&self, other: &Option<Split>) -> bool {
        match other {
            None => true,
            Some(o) => {
                if self.gain > o.gain + GAIN_EPS {
                    true
                } else if self.gain < o.gain - GAIN_EPS {
                    false
                } else {
                    (self.feature, self.threshold) < (o.feature, o.threshold)
                }
            }
        }
    }
}

struct Builder<'a> {
    cols: &'a Columns,
    labels: &'a [usize],
    n_classes: usize,
    params: TreeParams,
    nodes: Vec<Node>,
    buf: Vec<(f64, usize)>,
    left: Vec<usize>,
    feature_order: Vec<usize>,
}

impl Builder<'_> {
    /// Best split of `idx` on feature `f`; `None` if `f` is constant there.
    fn scan_feature(&mut self, idx: &[usize], f: usize, parent: f64, best: &mut Option<Split>) -> bool {
        let col = &self.cols.cols[f];
        self.buf.clear();
        self.buf.extend(idx.iter().map(|&i| (col[i], self.labels[i])));
        self.buf.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        let m = self.buf.len();
        if self.buf[0].0 == self.buf[m - 1].0 {
            return false;
        }
        let mut total = vec![0usize; self.n_classes];
        for &(_, l) in &self.buf {
            total[l] += 1;
        }
        self.left.iter_mut().for_each(|c| *c = 0);
        let mut right = total.clone();
        for pos in 0..m - 1 {
            let (v, l) = self.buf[pos];
            self.left[l] += 1;
            right[l] -= 1;
            let next = self.buf[pos + 1].0;
            if v == next {
                continue;
            }
            let nl = pos + 1;
            let nr = m - nl;
            let crit = self.params.criterion;
            let gain = parent
                - (nl as f64 / m as f64) * impurity(&self.left, nl, crit)
                - (nr as f64 / m as f64) * impurity(&right, nr, crit);
            let mut threshold = v + (next - v) / 2.0;
            if threshold >= next {
                threshold = v;
            }
            let cand = Split {
                gain,
                feature: f,
                threshold,
            };
            if cand.beats(best) {
                *best = Some(cand);
            }
        }
        true
    }

    fn best_split(&mut self, idx: &[usize], parent: f64, rng: &mut Option<&mut Rng>) -> Option<Split> {
        let d = self.cols.n_features();
        let mut best = None;
        match (self.params.max_features, rng.as_deref_mut()) {
            (Some(k), Some(rng)) if k < d => {
                let mut evaluated = 0;
                for i in 0..d {
                    let j = rng.gen_range(i..d);
                    self.feature_order.swap(i, j);
                    let f = self.feature_order[i];
                    if self.scan_feature(idx, f, parent, &mut best) {
                        evaluated += 1;
                        if evaluated == k {
                            break;
                        }
                    }
                }
            }
            _ => {
                for f in 0..d {
                    self.scan_feature(idx, f, parent, &mut best);
                }
            }
        }
        best
    }

    fn grow(&mut self, idx: &mut [usize], depth: usize, rng: &mut Option<&mut Rng>) -> u32 {
        let mut counts = vec![0usize; self.n_classes];
        for &i in idx.iter() {
            counts[self.labels[i]] += 1;
        }
        let majority = argmax_lowest(&counts) as u32;
        let id = self.nodes.len() as u32;
        self.nodes.push(Node {
            feature: LEAF,
            threshold: 0.0,
            left: LEAF,
            right: LEAF,
            majority,
            depth: depth as u16,
        });
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        let capped = self.params.max_depth.is_some_and(|m| depth >= m);
        if pure || capped || idx.len() < 2 {
            return id;
        }
        let parent = impurity(&counts, idx.len(), self.params.criterion);
        let Some(split) = self.best_split(idx, parent, rng) else {
            return id;
        };
        let col = &self.cols.cols[split.feature];
        let mut mid = 0;
        for k in 0..idx.len() {
            if col[idx[k]] <= split.threshold {
                idx.swap(k, mid);
                mid += 1;
            }
        }
        let (l, r) = idx.split_at_mut(mid);
        let left = self.grow(l, depth + 1, rng);
        let right = self.grow(r, depth + 1, rng);
        let node = &mut self.nodes[id as usize];
        node.feature = split.feature as u32;
        node.threshold = split.threshold;
        node.left = left;
        node.right = right;
        id
    }
}

impl DecisionTree {
    /// Grows a tree on the rows listed in `samples` (duplicates allowed).
    pub(crate) fn fit(
        cols: &Columns,
        labels: &[usize],
        n_classes: usize,
        samples: &[usize],
        params: TreeParams,
        mut rng: Option<&mut Rng>,
    ) -> Self {
        let mut b = Builder {
            cols,
            labels,
            n_classes,
            params,
            nodes: Vec::new(),
            buf: Vec::with_capacity(samples.len()),
            left: vec![0; n_classes],
            feature_order: (0..cols.n_features()).collect(),
        };
        let mut idx = samples.to_vec();
        b.grow(&mut idx, 0, &mut rng);
        DecisionTree {
            nodes: b.nodes,
            n_classes,
        }
    }

    /// Fits on a row-major block using every row once and every feature.
    pub fn fit_rows(
        data: &[f64],
        d: usize,
        labels: &[usize],
        n_classes: usize,
        criterion: Criterion,
        max_depth: Option<usize>,
    ) -> Self {
        let cols = Columns::from_rows(data, d);
        let samples: Vec<usize> = (0..labels.len()).collect();
        let params = TreeParams {
            criterion,
            max_depth,
            max_features: None,
        };
        Self::fit(&cols, labels, n_classes, &samples, params, None)
    }

    pub fn predict_row(&self, row: &[f64]) -> usize {
        self.predict_row_at_depth(row, usize::MAX)
    }

    /// Prediction of the same tree truncated at `max_depth`.
    pub fn predict_row_at_depth(&self, row: &[f64], max_depth: usize) -> usize {
        let mut n = &self.nodes[0];
        while n.feature != LEAF && (n.depth as usize) < max_depth {
            n = if row[n.feature as usize] <= n.threshold {
                &self.nodes[n.left as usize]
            } else {
                &self.nodes[n.right as usize]
            };
        }
        n.majority as usize
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth as usize).max().unwrap_or(0)
    }

    /// Features used by at least one split.
    pub fn used_features(&self) -> Vec<usize> {
        let mut f: Vec<usize> = self
            .nodes
            .iter()
            .filter(|n| n.feature != LEAF)
            .map(|n| n.feature as usize)
            .collect();
        f.sort_unstable();
        f.dedup();
        f
    }
}
