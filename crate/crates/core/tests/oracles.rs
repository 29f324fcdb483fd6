mod common;

use common::*;
use proptest::prelude::*;
use voltspy::featurex::{extract_window_features, CATALOG};
use voltspy::learners::evaluate;
use voltspy::telemetry::{Channel, TelemetrySample};

fn library(x: &[f64]) -> Vec<f64> {
    let w: Vec<TelemetrySample> = x
        .iter()
        .enumerate()
        .map(|(i, &v)| TelemetrySample::core(i as f64, 1.0, v, 0.0, 0.0, 0.0))
        .collect();
    extract_window_features(&w, &[Channel::Soc]).values
}

fn pairs() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=6).prop_flat_map(|k| (Just(k), prop::collection::vec((0..k, 0..k), 1..120)))
}

proptest! {
    #[test]
    fn metrics_match_brute_force((k, yy) in pairs()) {
        let (t, p): (Vec<usize>, Vec<usize>) = yy.into_iter().unzip();
        let classes: Vec<String> = (0..k).map(|c| format!("k{c}")).collect();
        let got = evaluate(&t, &p, &classes);
        let want = brute_metrics(&t, &p, k);
        prop_assert!((got.accuracy - want.accuracy).abs() <= 1e-12);
        prop_assert!((got.macro_f1 - want.macro_f1).abs() <= 1e-12);
        for c in 0..k {
            prop_assert!((got.per_class.precision[c] - want.precision[c]).abs() <= 1e-12);
            prop_assert!((got.per_class.recall[c] - want.recall[c]).abs() <= 1e-12);
        }
    }

    #[test]
    fn catalog_matches_definitions(x in prop::collection::vec(-1e3f64..1e3, 1..80)) {
        let got = library(&x);
        let want = catalog_oracle(&x);
        for (j, name) in CATALOG.iter().enumerate() {
            if name.starts_with("fft_angle") {
                prop_assert!(angle_gap(got[j], want[j]) <= 1e-6, "{name}: {} vs {}", got[j], want[j]);
            } else {
                prop_assert!(close(got[j], want[j], 1e-6), "{name}: {} vs {}", got[j], want[j]);
            }
        }
    }

    #[test]
    fn parseval(x in prop::collection::vec(-50f64..50.0, 1..120)) {
        let energy: f64 = x.iter().map(|v| v * v).sum();
        let spectral = dft(&x).iter().map(|(re, im)| re * re + im * im).sum::<f64>() / x.len() as f64;
        prop_assert!(close(spectral, energy, 1e-9));
    }

    #[test]
    fn spearman_is_bounded(v in prop::collection::vec(-10f64..10.0, 3..30)) {
        let idx: Vec<f64> = (0..v.len()).map(|i| i as f64).collect();
        let rho = spearman(&idx, &v);
        prop_assume!(rho.is_finite());
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&rho));
    }
}

#[test]
fn spearman_of_reversed_order() {
    let a = [1.0, 2.0, 3.0, 4.0];
    assert!((spearman(&a, &[9.0, 7.0, 5.0, 1.0]) + 1.0).abs() < 1e-12);
    assert!((spearman(&a, &a) - 1.0).abs() < 1e-12);
}

#[test]
fn constant_series_features() {
    let f = library(&[2.5; 12]);
    let want = catalog_oracle(&[2.5; 12]);
    for j in 0..CATALOG.len() {
        assert!(close(f[j], want[j], 1e-9), "{}", CATALOG[j]);
    }
}
