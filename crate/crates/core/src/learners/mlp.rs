//! One-hidden-layer perceptron with rectifier units and a softmax output,
//! trained by minibatch adaptive-moment descent on cross-entropy.

use ndarray::{Array1, Array2, ArrayView2, Axis, Zip};
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::argmax_lowest;
use crate::featurex::Standardizer;
use crate::rng;

pub const LEARNING_RATE: f64 = 1e-3;
pub const BATCH: usize = 32;
pub const EPOCHS: usize = 200;
const BETA1: f64 = 0.9;
const BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;

/// Network parameters. `w1` is `d × h`, `w2` is `h × c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpNet {
    pub w1: Array2<f64>,
    pub b1: Array1<f64>,
    pub w2: Array2<f64>,
    pub b2: Array1<f64>,
}

impl MlpNet {
    pub fn init(d: usize, hidden: usize, classes: usize, rng: &mut rng::Rng) -> Self {
        let mut glorot = |fan_in: usize, fan_out: usize| {
            let lim = (6.0 / (fan_in + fan_out) as f64).sqrt();
            Array2::from_shape_simple_fn((fan_in, fan_out), || rng.gen_range(-lim..lim))
        };
        let w1 = glorot(d, hidden);
        let w2 = glorot(hidden, classes);
        MlpNet {
            w1,
            b1: Array1::zeros(hidden),
            w2,
            b2: Array1::zeros(classes),
        }
    }

    fn zeros_like(&self) -> Self {
        MlpNet {
            w1: Array2::zeros(self.w1.raw_dim()),
            b1: Array1::zeros(self.b1.raw_dim()),
            w2: Array2::zeros(self.w2.raw_dim()),
            b2: Array1::zeros(self.b2.raw_dim()),
        }
    }

    fn hidden(&self, x: ArrayView2<f64>) -> Array2<f64> {
        let mut h = x.dot(&self.w1) + &self.b1;
        h.mapv_inplace(|v| v.max(0.0));
        h
    }

    /// Row-wise class probabilities.
    pub fn probabilities(&self, x: ArrayView2<f64>) -> Array2<f64> {
        let mut z = self.hidden(x).dot(&self.w2) + &self.b2;
        for mut row in z.axis_iter_mut(Axis(0)) {
            let m = row.fold(f64::NEG_INFINITY, |a, &b| a.max(b));
            row.mapv_inplace(|v| (v - m).exp());
            let s = row.sum();
            row /= s;
        }
        z
    }

    /// Mean cross-entropy of a batch and its gradient.
    pub fn loss_and_grad(&self, x: ArrayView2<f64>, y: &[usize]) -> (f64, MlpNet) {
        let n = x.nrows() as f64;
        let h = self.hidden(x);
        let mut p = {
            let mut z = h.dot(&self.w2) + &self.b2;
            for mut row in z.axis_iter_mut(Axis(0)) {
                let m = row.fold(f64::NEG_INFINITY, |a, &b| a.max(b));
                row.mapv_inplace(|v| (v - m).exp());
                let s = row.sum();
                row /= s;
            }
            z
        };
        let loss = -y
            .iter()
            .enumerate()
            .map(|(i, &c)| p[[i, c]].max(1e-300).ln())
            .sum::<f64>()
            / n;
        for (i, &c) in y.iter().enumerate() {
            p[[i, c]] -= 1.0;
        }
        p /= n;
        let gw2 = h.t().dot(&p);
        let gb2 = p.sum_axis(Axis(0));
        let mut dh = p.dot(&self.w2.t());
        Zip::from(&mut dh).and(&h).for_each(|g, &a| {
            if a <= 0.0 {
                *g = 0.0;
            }
        });
        let gw1 = x.t().dot(&dh);
        let gb1 = dh.sum_axis(Axis(0));
        (
            loss,
            MlpNet {
                w1: gw1,
                b1: gb1,
                w2: gw2,
                b2: gb2,
            },
        )
    }

    pub fn loss(&self, x: ArrayView2<f64>, y: &[usize]) -> f64 {
        let p = self.probabilities(x);
        -y.iter()
            .enumerate()
            .map(|(i, &c)| p[[i, c]].max(1e-300).ln())
            .sum::<f64>()
            / x.nrows() as f64
    }
}

struct Adam {
    m: MlpNet,
    v: MlpNet,
    t: i32,
}

impl Adam {
    fn step(&mut self, net: &mut MlpNet, g: &MlpNet) {
        self.t += 1;
        let c1 = 1.0 - BETA1.powi(self.t);
        let c2 = 1.0 - BETA2.powi(self.t);
        macro_rules! upd {
            ($f:ident) => {
                Zip::from(&mut net.$f)
                    .and(&mut self.m.$f)
                    .and(&mut self.v.$f)
                    .and(&g.$f)
                    .for_each(|w, m, v, &g| {
                        *m = BETA1 * *m + (1.0 - BETA1) * g;
                        *v = BETA2 * *v + (1.0 - BETA2) * g * g;
                        *w -= LEARNING_RATE * (*m / c1) / ((*v / c2).sqrt() + ADAM_EPS);
                    })
            };
        }
        upd!(w1);
        upd!(b1);
        upd!(w2);
        upd!(b2);
    }
}

/// Trained perceptron with its input standardizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    scaler: Standardizer,
    net: MlpNet,
    /// Mean training loss before the first and after the last epoch.
    pub loss_history: (f64, f64),
}

impl Mlp {
    pub fn fit_rows(data: &[f64], d: usize, labels: &[usize], n_classes: usize, hidden: usize, seed: u64) -> Self {
        Self::fit_rows_epochs(data, d, labels, n_classes, hidden, seed, EPOCHS)
    }

    pub fn fit_rows_epochs(
        data: &[f64],
        d: usize,
        labels: &[usize],
        n_classes: usize,
        hidden: usize,
        seed: u64,
        epochs: usize,
    ) -> Self {
        let scaler = Standardizer::fit_rows(data, d);
        let mut z = data.to_vec();
        scaler.transform_rows(&mut z);
        let n = labels.len();
        let x = Array2::from_shape_vec((n, d), z).expect("row-major block");
        let mut r = rng::derived_rng(seed, "mlp", 0);
        let mut net = MlpNet::init(d, hidden, n_classes, &mut r);
        let mut adam = Adam {
            m: net.zeros_like(),
            v: net.zeros_like(),
            t: 0,
        };
        let first = net.loss(x.view(), labels);
        let mut order: Vec<usize> = (0..n).collect();
        let mut yb = Vec::with_capacity(BATCH);
        for _ in 0..epochs {
            order.shuffle(&mut r);
            for chunk in order.chunks(BATCH) {
                let xb = x.select(Axis(0), chunk);
                yb.clear();
                yb.extend(chunk.iter().map(|&i| labels[i]));
                let (_, g) = net.loss_and_grad(xb.view(), &yb);
                adam.step(&mut net, &g);
            }
        }
        let last = net.loss(x.view(), labels);
        Mlp {
            scaler,
            net,
            loss_history: (first, last),
        }
    }

    pub fn net(&self) -> &MlpNet {
        &self.net
    }

    pub fn predict_rows(&self, data: &[f64]) -> Vec<usize> {
        let d = self.scaler.means.len();
        let n = data.len().checked_div(d).unwrap_or(0);
        let mut z = data.to_vec();
        self.scaler.transform_rows(&mut z);
        let x = Array2::from_shape_vec((n, d), z).expect("row-major block");
        self.net
            .probabilities(x.view())
            .axis_iter(Axis(0))
            .map(|p| argmax_lowest(p.as_slice().expect("contiguous")))
            .collect()
    }
}
