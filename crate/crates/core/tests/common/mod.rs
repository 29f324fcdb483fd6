//! Reference implementations used only by the integration tests. They are
//! written straight from the definitions, with no shared code, so a bug in
//! the library cannot hide behind the same bug here.

#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use voltspy::featurex::FeatureMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixed absolute/relative closeness: `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

pub struct BruteMetrics {
    pub accuracy: f64,
    pub precision: Vec<f64>,
    pub recall: Vec<f64>,
    pub f1: Vec<f64>,
    pub macro_f1: f64,
}

/// Per-class counts by scanning every pair, no confusion matrix.
pub fn brute_metrics(y_true: &[usize], y_pred: &[usize], n_classes: usize) -> BruteMetrics {
    let hits = y_true.iter().zip(y_pred).filter(|(t, p)| t == p).count();
    let mut precision = Vec::new();
    let mut recall = Vec::new();
    let mut f1 = Vec::new();
    for c in 0..n_classes {
        let mut tp = 0usize;
        let mut fp = 0usize;
        let mut fn_ = 0usize;
        for (&t, &p) in y_true.iter().zip(y_pred) {
            match (t == c, p == c) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fn_ += 1,
                _ => {}
            }
        }
        let p = if tp + fp == 0 {
            0.0
        } else {
            tp as f64 / (tp + fp) as f64
        };
        let r = if tp + fn_ == 0 {
            0.0
        } else {
            tp as f64 / (tp + fn_) as f64
        };
        // F1 as the harmonic mean written out in counts
        let f = if 2 * tp + fp + fn_ == 0 {
            0.0
        } else {
            2.0 * tp as f64 / (2 * tp + fp + fn_) as f64
        };
        precision.push(p);
        recall.push(r);
        f1.push(f);
    }
    let macro_f1 = f1.iter().sum::<f64>() / n_classes as f64;
    BruteMetrics {
        accuracy: hits as f64 / y_true.len() as f64,
        precision,
        recall,
        f1,
        macro_f1,
    }
}

/// Full DFT by the textbook sum, angles computed directly.
pub fn dft(x: &[f64]) -> Vec<(f64, f64)> {
    let n = x.len() as f64;
    (0..x.len())
        .map(|k| {
            x.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, &v)| {
                let a = -2.0 * PI * (k as f64) * (j as f64) / n;
                (re + v * a.cos(), im + v * a.sin())
            })
        })
        .collect()
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let below = pos.floor();
    let frac = pos - below;
    let i = below as usize;
    if i + 1 >= sorted.len() {
        sorted[i]
    } else {
        sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
    }
}

/// The 35 catalog values of one series, in catalog order.
pub fn catalog_oracle(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let nf = n as f64;
    let mean = x.iter().sum::<f64>() / nf;
    let moment = |p: i32| x.iter().map(|v| (v - mean).powi(p)).sum::<f64>() / nf;
    let var = moment(2);
    let flat = var < 1e-12;
    let skew = if flat { 0.0 } else { moment(3) / var.sqrt().powi(3) };
    let kurt = if flat { 0.0 } else { moment(4) / var.powi(2) - 3.0 };

    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out = vec![mean, var, skew, kurt, sorted[0], sorted[n - 1]];
    for q in [0.1, 0.25, 0.5, 0.75, 0.9] {
        out.push(quantile(&sorted, q));
    }
    out.push(x.iter().map(|v| v.powi(2)).sum());
    out.push(if n < 2 {
        0.0
    } else {
        (1..n).map(|i| (x[i] - x[i - 1]).abs()).sum::<f64>() / (nf - 1.0)
    });
    out.push(x.iter().filter(|&&v| v > mean).count() as f64);

    // ordinary least squares on t = 0..n-1
    let slope = if n < 2 {
        0.0
    } else {
        let st: f64 = (0..n).map(|i| i as f64).sum();
        let stt: f64 = (0..n).map(|i| (i * i) as f64).sum();
        let sy: f64 = x.iter().sum();
        let sty: f64 = x.iter().enumerate().map(|(i, v)| i as f64 * v).sum();
        (nf * sty - st * sy) / (nf * stt - st * st)
    };
    out.push(slope);

    for lag in 1..=4 {
        let r = if flat || lag >= n {
            0.0
        } else {
            let s: f64 = (lag..n).map(|i| (x[i] - mean) * (x[i - lag] - mean)).sum();
            s / ((n - lag) as f64 * var)
        };
        out.push(r);
    }

    let spectrum = dft(x);
    let abs_sum: f64 = x.iter().map(|v| v.abs()).sum();
    for k in 0..8 {
        if k > n / 2 {
            out.extend([0.0, 0.0]);
            continue;
        }
        let (re, im) = spectrum[k];
        let mag = (re * re + im * im).sqrt();
        let phase = if mag <= 1e-10 * abs_sum { 0.0 } else { im.atan2(re) };
        out.extend([mag, phase]);
    }
    out
}

/// Difference of two angles folded into `[0, pi]`.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// A random series of length 5..=100 drawn from one of a few shapes:
/// noise, trend plus noise, small integers (ties), a constant, a sinusoid.
pub fn random_series(r: &mut ChaCha8Rng) -> Vec<f64> {
    let n = r.gen_range(5..=100);
    let scale = 10f64.powi(r.gen_range(-1..=3));
    let offset = r.gen_range(-5.0..5.0) * scale;
    match r.gen_range(0..5) {
        0 => (0..n).map(|_| offset + scale * r.gen_range(-1.0..1.0)).collect(),
        1 => {
            let slope = r.gen_range(-1.0..1.0) * scale / n as f64;
            (0..n)
                .map(|i| offset + slope * i as f64 + 0.1 * scale * r.gen_range(-1.0..1.0))
                .collect()
        }
        2 => (0..n).map(|_| r.gen_range(0..5) as f64).collect(),
        3 => vec![offset; n],
        _ => {
            let period = r.gen_range(2.0..20.0);
            (0..n)
                .map(|i| offset + scale * (2.0 * PI * i as f64 / period).sin())
                .collect()
        }
    }
}

/// Average ranks, ties sharing the mean of their positions.
pub fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap());
    let mut out = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation as the Pearson correlation of ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    let (rx, ry) = (ranks(x), ranks(y));
    let n = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Two classes in the plane on either side of the line `w . p = 0.3`
/// (`w` unit length), with a strip of width `margin` around it left empty.
pub fn separable(n: usize, margin: f64, w: (f64, f64), seed: u64) -> (Vec<f64>, Vec<usize>) {
    let mut r = rng(seed);
    let (wx, wy) = w;
    let mut data = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(n);
    while labels.len() < n {
        let (x, y) = (r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0));
        let d = wx * x + wy * y - 0.3;
        if d.abs() < margin / 2.0 {
            continue;
        }
        data.extend([x, y]);
        labels.push(usize::from(d > 0.0));
    }
    (data, labels)
}

pub fn matrix(data: Vec<f64>, labels: Vec<usize>, d: usize) -> FeatureMatrix {
    let names = (0..d).map(|j| format!("x{j}")).collect();
    let n_classes = labels.iter().max().map_or(0, |m| m + 1);
    let classes = (0..n_classes).map(|c| format!("c{c}")).collect();
    FeatureMatrix::from_codes(names, data, labels, classes).unwrap()
}
