mod common;

use std::collections::BTreeSet;

use common::*;
use voltspy::attacks::{canonical_spec, prepare, run_attack, AttackOptions, Objective};
use voltspy::learners::{evaluate, grid_search, ModelKind};
use voltspy::shield::sweep;
use voltspy::synthgen::{generate_scale, Scale};
use voltspy::telemetry::{read_dataset_dir, write_dataset_dir, Dataset};
use voltspy::Error;

fn drivers() -> Dataset {
    generate_scale(Scale::Drivers, 11).unwrap()
}

fn opts(kinds: &[ModelKind]) -> AttackOptions {
    AttackOptions {
        kinds: kinds.to_vec(),
        seed: 5,
        balance: false,
        max_rows: Some(2000),
    }
}

#[test]
fn csv_round_trip_preserves_attack_results() {
    let ds = drivers();
    let dir = tempfile::tempdir().unwrap();
    write_dataset_dir(&ds, dir.path()).unwrap();
    let back = read_dataset_dir(dir.path()).unwrap();
    assert_eq!(back.trips.len(), ds.trips.len());
    let spec = canonical_spec(Objective::Driver);
    let o = opts(&[ModelKind::Dt]);
    let a = run_attack(&ds, &spec, &o).unwrap();
    let b = run_attack(&back, &spec, &o).unwrap();
    assert_eq!(a[0].report, b[0].report);
}

#[test]
fn identity_window_matches_plain_attack() {
    let ds = drivers();
    let o = opts(&[ModelKind::Dt, ModelKind::Rf]);
    let direct = run_attack(&ds, &canonical_spec(Objective::Style), &o).unwrap();
    let swept = sweep(&ds, Objective::Style, &[1], &o).unwrap();
    for r in &direct {
        assert_eq!(
            swept.accuracy(1, r.model_kind),
            Some(r.report.accuracy),
            "{}",
            r.model_kind
        );
    }
}

#[test]
fn oversized_window_names_the_size() {
    let err = sweep(&drivers(), Objective::Vehicle, &[10, 100_000], &opts(&[ModelKind::Dt])).unwrap_err();
    assert!(matches!(err, Error::EmptyAfterAggregation(100_000)), "{err}");
    assert!(err.to_string().contains("100000"));
}

#[test]
fn sweep_rejects_catalog_objectives() {
    assert!(sweep(&drivers(), Objective::Origin, &[10], &opts(&[ModelKind::Dt])).is_err());
}

#[test]
fn sweep_rows_are_equalised() {
    let ds = drivers();
    let res = sweep(&ds, Objective::Vehicle, &[10, 20, 50], &opts(&[ModelKind::Dt])).unwrap();
    assert_eq!(res.rows.len(), 3);
    let at_50: usize = ds.trips.iter().map(|t| t.len() / 50).sum();
    assert_eq!(res.rows_per_size, at_50);
}

#[test]
fn balanced_origin_train_histogram_is_uniform() {
    let ds = drivers();
    let mut o = opts(&[ModelKind::Dt]);
    o.balance = true;
    o.max_rows = None;
    let p = prepare(&ds, &canonical_spec(Objective::Origin), &o).unwrap();
    let counts: BTreeSet<usize> = p.fingerprint.train_histogram.values().copied().collect();
    assert_eq!(counts.len(), 1, "{:?}", p.fingerprint.train_histogram);
}

#[test]
fn catalog_split_keeps_trips_apart() {
    let p = prepare(&drivers(), &canonical_spec(Objective::Driver), &opts(&[ModelKind::Dt])).unwrap();
    let train: BTreeSet<&str> = (0..p.train.n_rows()).map(|i| p.train.trip_id(i)).collect();
    let test: BTreeSet<&str> = (0..p.test.n_rows()).map(|i| p.test.trip_id(i)).collect();
    assert!(train.is_disjoint(&test));
}

#[test]
fn tilted_separable_set() {
    // axis-aligned trees approximate a tilted boundary with steps, so only
    // the distance-based model is held to a perfect score here
    let (data, labels) = separable(500, 1.0, (0.8, 0.6), 8);
    let train = matrix(data[..800].to_vec(), labels[..400].to_vec(), 2);
    let test = matrix(data[800..].to_vec(), labels[400..].to_vec(), 2);
    for (kind, floor) in [(ModelKind::Knn, 1.0), (ModelKind::Rf, 0.95), (ModelKind::Dt, 0.95)] {
        let model = grid_search(&train, kind, 1).unwrap().model;
        let acc = evaluate(test.labels(), &model.predict(&test).unwrap(), test.classes()).accuracy;
        assert!(acc >= floor, "{kind}: {acc}");
    }
}
