//! The fixed per-channel time-series feature catalog.
//!
//! Per channel, in order: mean, population variance, skewness, excess
//! kurtosis, min, max, five quantiles, absolute energy, mean absolute change,
//! count above mean, linear trend slope, autocorrelation at lags 1-4, then
//! DFT magnitude and phase of coefficients 0-7.

use std::f64::consts::PI;

use crate::telemetry::{Channel, TelemetrySample};

const VAR_EPS: f64 = 1e-12;
const QUANTILES: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
const MAX_LAG: usize = 4;
pub const DFT_COEFFICIENTS: usize = 8;

pub const CATALOG: [&str; 35] = [
    "mean",
    "variance",
    "skewness",
    "kurtosis",
    "minimum",
    "maximum",
    "quantile_0.1",
    "quantile_0.25",
    "quantile_0.5",
    "quantile_0.75",
    "quantile_0.9",
    "abs_energy",
    "mean_abs_change",
    "count_above_mean",
    "linear_trend_slope",
    "autocorrelation_lag1",
    "autocorrelation_lag2",
    "autocorrelation_lag3",
    "autocorrelation_lag4",
    "fft_abs_0",
    "fft_angle_0",
    "fft_abs_1",
    "fft_angle_1",
    "fft_abs_2",
    "fft_angle_2",
    "fft_abs_3",
    "fft_angle_3",
    "fft_abs_4",
    "fft_angle_4",
    "fft_abs_5",
    "fft_angle_5",
    "fft_abs_6",
    "fft_angle_6",
    "fft_abs_7",
    "fft_angle_7",
];

pub const FEATURES_PER_CHANNEL: usize = CATALOG.len();

/// Named, fixed-order feature values of one window.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub names: Vec<String>,
    pub values: Vec<f64>,
}

/// `channel__feature` names for the given channels.
pub fn catalog_names(channels: &[Channel]) -> Vec<String> {
    channels
        .iter()
        .flat_map(|c| CATALOG.iter().map(move |f| format!("{}__{}", c.name(), f)))
        .collect()
}

/// Catalog features of one window over the given channels.
///
/// Panics if a channel is missing from a sample; callers restrict channels
/// to those the whole dataset carries.
pub fn extract_window_features(window: &[TelemetrySample], channels: &[Channel]) -> FeatureVector {
    let mut values = vec![0.0; channels.len() * FEATURES_PER_CHANNEL];
    let mut series = Vec::with_capacity(window.len());
    for (c, out) in channels.iter().zip(values.chunks_mut(FEATURES_PER_CHANNEL)) {
        series.clear();
        series.extend(window.iter().map(|s| s.get(*c).expect("channel present in window")));
        series_features(&series, out);
    }
    FeatureVector {
        names: catalog_names(channels),
        values,
    }
}

/// Writes the catalog for one series into `out` (length [`FEATURES_PER_CHANNEL`]).
pub(crate) fn series_features(x: &[f64], out: &mut [f64]) {
    debug_assert_eq!(out.len(), FEATURES_PER_CHANNEL);
    let n = x.len();
    out.fill(0.0);
    if n == 0 {
        return;
    }
    let nf = n as f64;
    let mean = x.iter().sum::<f64>() / nf;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in x {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= nf;
    m3 /= nf;
    m4 /= nf;
    let flat = m2 < VAR_EPS;

    out[0] = mean;
    out[1] = m2;
    if !flat {
        out[2] = m3 / m2.powf(1.5);
        out[3] = m4 / (m2 * m2) - 3.0;
    }

    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    out[4] = sorted[0];
    out[5] = sorted[n - 1];
    for (slot, q) in out[6..11].iter_mut().zip(QUANTILES) {
        let h = (n - 1) as f64 * q;
        let lo = h.floor() as usize;
        let hi = (lo + 1).min(n - 1);
        *slot = sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo]);
    }

    out[11] = x.iter().map(|v| v * v).sum();
    if n > 1 {
        out[12] = x.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>() / (nf - 1.0);
    }
    out[13] = x.iter().filter(|&&v| v > mean).count() as f64;
    if n > 1 {
        let ci = (nf - 1.0) / 2.0;
        let (mut sxy, mut sxx) = (0.0, 0.0);
        for (i, &v) in x.iter().enumerate() {
            let di = i as f64 - ci;
            sxy += di * (v - mean);
            sxx += di * di;
        }
        out[14] = sxy / sxx;
    }

    if !flat {
        for lag in 1..=MAX_LAG {
            if lag >= n {
                break;
            }
            let cov: f64 = (0..n - lag).map(|i| (x[i] - mean) * (x[i + lag] - mean)).sum::<f64>();
            out[14 + lag] = cov / ((n - lag) as f64 * m2);
        }
    }

    dft_features(x, &mut out[19..]);
}

/// Magnitude and phase of the first DFT coefficients; coefficients beyond
/// `len / 2` are reported as zero, and the phase of a numerically vanishing
/// coefficient is zero.
fn dft_features(x: &[f64], out: &mut [f64]) {
    let n = x.len();
    let nyquist = n / 2;
    let abs_sum: f64 = x.iter().map(|v| v.abs()).sum();
    // twiddle table indexed by (j * k) mod n
    let table: Vec<(f64, f64)> = (0..n).map(|m| (2.0 * PI * m as f64 / n as f64).sin_cos()).collect();
    for k in 0..DFT_COEFFICIENTS.min(nyquist + 1) {
        let (mut re, mut im) = (0.0, 0.0);
        for (j, &v) in x.iter().enumerate() {
            let (s, c) = table[(j * k) % n];
            re += v * c;
            im -= v * s;
        }
        let mag = re.hypot(im);
        out[2 * k] = mag;
        out[2 * k + 1] = if mag <= 1e-10 * abs_sum { 0.0 } else { im.atan2(re) };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn features(x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; FEATURES_PER_CHANNEL];
        series_features(x, &mut out);
        out
    }

    fn get(f: &[f64], name: &str) -> f64 {
        f[CATALOG.iter().position(|n| *n == name).unwrap()]
    }

    #[test]
    fn constant_series() {
        let f = features(&[3.0, 3.0, 3.0, 3.0]);
        assert_eq!(get(&f, "variance"), 0.0);
        assert_eq!(get(&f, "skewness"), 0.0);
        assert_eq!(get(&f, "kurtosis"), 0.0);
        assert!((get(&f, "fft_abs_0") - 12.0).abs() < 1e-12);
        for k in 1..8 {
            assert!(get(&f, &format!("fft_abs_{k}")).abs() < 1e-12, "coefficient {k}");
            assert_eq!(get(&f, &format!("fft_angle_{k}")), 0.0);
        }
        for lag in 1..=4 {
            assert_eq!(get(&f, &format!("autocorrelation_lag{lag}")), 0.0);
        }
    }

    #[test]
    fn ramp_series() {
        let f = features(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(get(&f, "mean"), 2.5);
        assert!((get(&f, "variance") - 1.25).abs() < 1e-12);
        assert!(get(&f, "skewness").abs() < 1e-12);
        assert_eq!(get(&f, "abs_energy"), 30.0);
        assert!((get(&f, "linear_trend_slope") - 1.0).abs() < 1e-12);
        assert_eq!(get(&f, "mean_abs_change"), 1.0);
        assert_eq!(get(&f, "count_above_mean"), 2.0);
        assert_eq!(get(&f, "quantile_0.5"), 2.5);
        // 4 samples: lags 4 and beyond have no pairs
        assert_eq!(get(&f, "autocorrelation_lag4"), 0.0);
        // coefficients above len/2 = 2 are zero
        assert_eq!(get(&f, "fft_abs_3"), 0.0);
    }

    #[test]
    fn single_sample_window_is_defined() {
        let f = features(&[5.0]);
        assert!(f.iter().all(|v| v.is_finite()));
        assert_eq!(get(&f, "mean"), 5.0);
        assert_eq!(get(&f, "fft_abs_0"), 5.0);
    }

    #[test]
    fn names_are_unique_and_channel_prefixed() {
        let names = catalog_names(&[Channel::Soc, Channel::Rpm]);
        assert_eq!(names.len(), 2 * FEATURES_PER_CHANNEL);
        let set: std::collections::HashSet<_> = names.iter().collect();
        assert_eq!(set.len(), names.len());
        assert_eq!(names[0], "soc_pct__mean");
        assert_eq!(names[FEATURES_PER_CHANNEL], "rpm__mean");
    }
}
