use crate::error::{Error, Result};
use crate::telemetry::{Dataset, TelemetrySample, Trip};

fn mean_opt(window: &[TelemetrySample], f: impl Fn(&TelemetrySample) -> Option<f64>) -> Option<f64> {
    let mut sum = 0.0;
    for s in window {
        sum += f(s)?;
    }
    Some(sum / window.len() as f64)
}

fn mean_of(window: &[TelemetrySample], f: impl Fn(&TelemetrySample) -> f64) -> f64 {
    window.iter().map(f).sum::<f64>() / window.len() as f64
}

/// Replaces every `w` consecutive samples by their channel means. The
/// trailing partial window is dropped, so a trip shorter than `w` comes
/// back empty with its labels intact.
pub fn aggregate_trip(trip: &Trip, w: usize) -> Result<Trip> {
    if w == 0 {
        return Err(Error::Invalid("window size must be at least 1".into()));
    }
    let samples = trip
        .samples
        .chunks_exact(w)
        .map(|c| TelemetrySample {
            t: mean_of(c, |s| s.t),
            capacity_wh: mean_of(c, |s| s.capacity_wh),
            soc_pct: mean_of(c, |s| s.soc_pct),
            energy_consumed_wh: mean_of(c, |s| s.energy_consumed_wh),
            energy_regen_wh: mean_of(c, |s| s.energy_regen_wh),
            consumption_avg_mwh: mean_of(c, |s| s.consumption_avg_mwh),
            soh_pct: mean_opt(c, |s| s.soh_pct),
            motor_power_w: mean_opt(c, |s| s.motor_power_w),
            torque_nm: mean_opt(c, |s| s.torque_nm),
            rpm: mean_opt(c, |s| s.rpm),
        })
        .collect();
    Ok(Trip {
        trip_id: trip.trip_id.clone(),
        samples,
        labels: trip.labels.clone(),
    })
}

/// Aggregates every trip and drops the ones left empty.
pub fn aggregate_dataset(ds: &Dataset, w: usize) -> Result<Dataset> {
    let trips: Vec<Trip> = crate::par::try_map(&ds.trips, |t| aggregate_trip(t, w))?
        .into_iter()
        .filter(|t| !t.is_empty())
        .collect();
    if trips.is_empty() {
        return Err(Error::EmptyAfterAggregation(w));
    }
    Dataset::new(trips)
}
