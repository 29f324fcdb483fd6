use super::*;
use crate::telemetry::Style;

fn base() -> ScenarioConfig {
    ScenarioConfig::new(
        VehicleParams::simulated_fleet()[1].clone(),
        DriverProfile::for_style(Style::Moderate),
        route(0),
        1,
        0.0,
        0,
    )
}

fn parked(duration_s: f64) -> RouteProfile {
    RouteProfile {
        route_id: "parked".into(),
        origin: "city_00".into(),
        destination: "city_00".into(),
        segments: vec![Segment::new(100.0, 0.0, 0.0, 0.0), Segment::new(100.0, 0.0, 0.0, 0.0)],
        max_duration_s: duration_s,
    }
}

fn last(trip: &crate::telemetry::Trip) -> crate::telemetry::TelemetrySample {
    *trip.samples.last().unwrap()
}

#[test]
fn same_seed_same_trip() {
    let c = base();
    assert_eq!(generate_trip(&c, 5).unwrap(), generate_trip(&c, 5).unwrap());
    assert_ne!(generate_trip(&c, 5).unwrap(), generate_trip(&c, 6).unwrap());
}

#[test]
fn trip_reaches_destination_in_expected_time() {
    let t = generate_trip(&base(), 1).unwrap();
    assert!((120..=220).contains(&t.len()), "{} samples", t.len());
    assert!(last(&t).t < 1800.0);
}

#[test]
fn occupants_cost_energy() {
    let one = generate_trip(&base(), 3).unwrap();
    let five = generate_trip(&ScenarioConfig { occupancy: 5, ..base() }, 3).unwrap();
    assert_eq!(one.len(), five.len());
    assert!(last(&five).energy_consumed_wh > last(&one).energy_consumed_wh);
}

#[test]
fn aux_load_on_parked_vehicle() {
    let idle = ScenarioConfig {
        route: parked(600.0),
        ..base()
    };
    let off = generate_trip(&idle, 0).unwrap();
    let on = generate_trip(
        &ScenarioConfig {
            aux_w: 1500.0,
            ..idle.clone()
        },
        0,
    )
    .unwrap();
    assert_eq!(last(&on).t, 600.0);
    // 1500 W for 600 s
    let diff = last(&on).energy_consumed_wh - last(&off).energy_consumed_wh;
    assert!((diff - 250.0).abs() < 1e-9, "{diff}");
    assert_eq!(last(&off).energy_consumed_wh, 0.0);
}

#[test]
fn no_regen_without_recovery() {
    let mut c = base();
    c.vehicle.regen_eff = 0.0;
    let t = generate_trip(&c, 2).unwrap();
    assert_eq!(last(&t).energy_regen_wh, 0.0);
    let with = generate_trip(&base(), 2).unwrap();
    assert!(last(&with).energy_regen_wh > 0.0);
}

#[test]
fn depletion_is_reported() {
    let mut c = base();
    c.vehicle.capacity_wh = 50.0;
    assert!(matches!(generate_trip(&c, 0), Err(Error::BatteryDepleted { .. })));
}

#[test]
fn bad_occupancy_rejected() {
    assert!(generate_trip(&ScenarioConfig { occupancy: 6, ..base() }, 0).is_err());
}

#[test]
fn energy_bookkeeping_holds() {
    for (i, c) in scenario_grid(Scale::Desk).iter().step_by(97).enumerate() {
        let t = generate_trip(c, i as u64).unwrap();
        let mut prev = t.samples[0];
        for s in &t.samples {
            assert!(s.energy_consumed_wh >= prev.energy_consumed_wh);
            assert!(s.energy_regen_wh >= prev.energy_regen_wh);
            assert!(s.energy_regen_wh <= s.energy_consumed_wh);
            let net = s.energy_consumed_wh - s.energy_regen_wh;
            let from_soc = s.capacity_wh * (100.0 - s.soc_pct) / 100.0;
            assert!((net - from_soc).abs() <= 1e-6 * net.abs().max(1.0));
            prev = *s;
        }
    }
}

#[test]
fn vehicles_share_the_speed_profile() {
    let fleet = VehicleParams::simulated_fleet();
    let speed = |v: &VehicleParams| {
        let mut c = ScenarioConfig {
            vehicle: v.clone(),
            ..base()
        };
        c.extras = true;
        let t = generate_trip(&c, c.speed_seed(42)).unwrap();
        let s: Vec<f64> = t
            .samples
            .iter()
            .map(|s| s.rpm.unwrap() * 2.0 * std::f64::consts::PI / 60.0 * v.wheel_radius_m / v.gear_ratio)
            .collect();
        (s, t.channel(crate::telemetry::Channel::EnergyConsumed).unwrap())
    };
    let (s0, e0) = speed(&fleet[0]);
    let (s3, e3) = speed(&fleet[3]);
    assert_eq!(s0.len(), s3.len());
    for (a, b) in s0.iter().zip(&s3) {
        assert!((a - b).abs() < 1e-9);
    }
    assert_ne!(e0, e3);
}

#[test]
fn dataset_of_one() {
    let ds = generate_dataset(&[base()], 1).unwrap();
    assert_eq!(ds.len(), 1);
    assert!(generate_dataset(&[], 1).is_err());
    assert!(generate_dataset(&[base(), base()], 1).is_err());
}

#[test]
fn master_seed_changes_samples() {
    let grid: Vec<_> = scenario_grid(Scale::Desk).into_iter().take(5).collect();
    let a = generate_dataset(&grid, 1).unwrap();
    let b = generate_dataset(&grid, 2).unwrap();
    assert_ne!(a.trips, b.trips);
}

#[test]
fn desk_grid_balanced_and_style_ordered() {
    let ds = generate_scale(Scale::Desk, 42).unwrap();
    assert_eq!(ds.len(), 6300);
    let mut hist = std::collections::BTreeMap::new();
    for t in &ds.trips {
        for l in crate::telemetry::LabelName::ALL {
            *hist.entry((l, t.labels.get(l).unwrap())).or_insert(0usize) += 1;
        }
    }
    let count = |l, n: usize| hist.iter().filter(|((k, _), _)| *k == l).all(|(_, &c)| c == 6300 / n);
    use crate::telemetry::LabelName as L;
    assert!(count(L::Vehicle, 5) && count(L::Style, 3) && count(L::Occupancy, 5) && count(L::AuxW, 4));
    assert!(count(L::Origin, 7) && count(L::Destination, 7));
    for v in VehicleParams::simulated_fleet() {
        let mean = |s: Style| {
            let trips: Vec<_> = ds
                .trips
                .iter()
                .filter(|t| t.labels.style == Some(s) && t.labels.vehicle.as_deref() == Some(&v.name))
                .collect();
            trips
                .iter()
                .map(|t| t.samples.iter().map(|s| s.consumption_avg_mwh).sum::<f64>() / t.len() as f64)
                .sum::<f64>()
                / trips.len() as f64
        };
        let (a, m, d) = (mean(Style::Aggressive), mean(Style::Moderate), mean(Style::Defensive));
        assert!(a > m && m > d, "{}: {a} {m} {d}", v.name);
    }
}

#[test]
fn presets_file_parses() {
    let dir = tempfile::tempdir().unwrap();
    write_presets(dir.path()).unwrap();
    let text = std::fs::read_to_string(dir.path().join(PRESETS_FILE)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["simulated_fleet"].as_array().unwrap().len(), 5);
    assert_eq!(v["occupant_mass_kg"], 75.0);
}
