use std::collections::HashSet;

use super::*;
use crate::error::Error;
use crate::learners::ModelKind;
use crate::synthgen::{generate_dataset, scenario_grid, Scale};
use crate::telemetry::Dataset;

fn small() -> Dataset {
    let grid: Vec<_> = scenario_grid(Scale::Desk)
        .into_iter()
        .filter(|c| c.occupancy == 1 && c.aux_w == 0.0 && c.noise_index < 2)
        .collect();
    generate_dataset(&grid, 9).unwrap()
}

fn opts(kinds: &[ModelKind]) -> AttackOptions {
    AttackOptions {
        kinds: kinds.to_vec(),
        seed: 3,
        balance: false,
        max_rows: Some(600),
    }
}

#[test]
fn catalog_split_keeps_trips_whole() {
    let ds = small();
    let p = prepare(&ds, &canonical_spec(Objective::Driver), &opts(&[])).unwrap();
    let train: HashSet<&str> = (0..p.train.n_rows()).map(|i| p.train.trip_id(i)).collect();
    assert!((0..p.test.n_rows()).all(|i| !train.contains(p.test.trip_id(i))));
    assert_eq!(p.test.classes(), p.train.classes());
}

#[test]
fn vehicle_attack_and_report_consistency() {
    let ds = small();
    let res = run_attack(
        &ds,
        &canonical_spec(Objective::Vehicle),
        &opts(&[ModelKind::Rf, ModelKind::Dt]),
    )
    .unwrap();
    assert_eq!(res.len(), 2);
    for r in &res {
        assert!(r.report.accuracy >= 0.95, "{} {}", r.model_kind, r.report.accuracy);
        let n: usize = r.report.confusion.iter().flatten().sum();
        let trace: usize = (0..r.report.classes.len()).map(|i| r.report.confusion[i][i]).sum();
        assert!((r.report.accuracy - trace as f64 / n as f64).abs() < 1e-12);
        assert_eq!(r.report.classes.len(), 5);
    }
}

#[test]
fn repeated_runs_serialize_identically() {
    let ds = small();
    let spec = canonical_spec(Objective::Origin);
    let a = run_attack(&ds, &spec, &opts(&[ModelKind::Dt, ModelKind::Knn])).unwrap();
    let b = run_attack(&ds, &spec, &opts(&[ModelKind::Dt, ModelKind::Knn])).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn balance_equalises_training_classes() {
    let mut ds = small();
    // make one origin rare
    ds.trips
        .retain(|t| t.labels.origin.as_deref() != Some("city_00") || t.trip_id.ends_with("n0"));
    let ds = Dataset::new(ds.trips).unwrap();
    let o = AttackOptions {
        balance: true,
        max_rows: None,
        ..opts(&[])
    };
    let p = prepare(&ds, &canonical_spec(Objective::Origin), &o).unwrap();
    let counts: HashSet<usize> = p.fingerprint.train_histogram.values().copied().collect();
    assert_eq!(counts.len(), 1, "{:?}", p.fingerprint.train_histogram);
}

#[test]
fn missing_label_names_trips() {
    let mut ds = small();
    ds.trips[3].labels.driver = None;
    let id = ds.trips[3].trip_id.clone();
    match run_attack(&ds, &canonical_spec(Objective::Driver), &opts(&[ModelKind::Dt])) {
        Err(Error::MissingLabel { label, trips }) => {
            assert_eq!(label, "driver");
            assert_eq!(trips, vec![id]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn constant_target_rejected() {
    let mut ds = small();
    ds.trips.retain(|t| t.labels.vehicle.as_deref() == Some("bmw_i3"));
    let r = run_attack(&ds, &canonical_spec(Objective::Vehicle), &opts(&[ModelKind::Dt]));
    assert!(matches!(r, Err(Error::SingleClass(1))), "{r:?}");
}

#[test]
fn shuffled_training_labels_fall_to_chance() {
    let ds = small();
    let mut p = prepare(&ds, &canonical_spec(Objective::Style), &opts(&[])).unwrap();
    let mut labels = p.train.labels().to_vec();
    use rand::seq::SliceRandom;
    labels.shuffle(&mut crate::rng::rng(17));
    p.train = p.train.with_labels(labels);
    let run = p.fit(ModelKind::Rf, &opts(&[ModelKind::Rf])).unwrap();
    let chance = 1.0 / 3.0;
    assert!(
        (run.result.report.accuracy - chance).abs() <= 0.15,
        "{}",
        run.result.report.accuracy
    );
}

#[test]
fn results_written_per_kind() {
    let ds = small();
    let res = run_attack(&ds, &canonical_spec(Objective::Vehicle), &opts(&[ModelKind::Dt])).unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_results(dir.path(), &res).unwrap();
    assert!(dir.path().join("results/vehicle_dt.json").exists());
    let summary = std::fs::read_to_string(dir.path().join(SUMMARY_FILE)).unwrap();
    assert!(summary.starts_with("objective,kind,accuracy,macro_f1\nvehicle,dt,"));
}

#[test]
fn consumption_average_matters_more_than_soc_for_style() {
    let ds = small();
    let runs = run_attack_detailed(&ds, &canonical_spec(Objective::Style), &opts(&[ModelKind::Rf])).unwrap();
    let p = prepare(&ds, &canonical_spec(Objective::Style), &opts(&[])).unwrap();
    let imp = permutation_importance(&runs[0].model, &p.test, 3, 5).unwrap();
    let rank = |n: &str| imp.iter().position(|(f, _)| f == n).unwrap();
    assert!(rank("consumption_avg_mwh") < rank("soc_pct"), "{imp:?}");
}
