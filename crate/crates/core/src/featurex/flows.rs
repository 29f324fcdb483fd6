use crate::error::{Error, Result};
use crate::par;
use crate::telemetry::{Channel, LabelName, Trip};

use super::catalog::{catalog_names, series_features, FEATURES_PER_CHANNEL};
use super::matrix::{FeatureMatrix, MatrixBuilder};
use super::window::{segment_ranges, WindowSpec};

/// Raw channel values, one row per sample, all labelled `label`.
pub fn extract_per_sample(trip: &Trip, channels: &[Channel], label: &str) -> FeatureMatrix {
    per_sample_rows(trip, channels, label).finish()
}

fn per_sample_rows(trip: &Trip, channels: &[Channel], label: &str) -> MatrixBuilder {
    let mut b = MatrixBuilder::new(channels.iter().map(|c| c.name().to_string()).collect());
    let mut row = vec![0.0; channels.len()];
    for (i, s) in trip.samples.iter().enumerate() {
        for (slot, c) in row.iter_mut().zip(channels) {
            *slot = s.get(*c).expect("channel present in trip");
        }
        b.push(&row, label, &trip.trip_id, i);
    }
    b
}

fn catalog_rows(trip: &Trip, channels: &[Channel], window: &WindowSpec, label: &str) -> Result<MatrixBuilder> {
    let mut b = MatrixBuilder::new(catalog_names(channels));
    let series: Vec<Vec<f64>> = channels
        .iter()
        .map(|&c| trip.channel(c).expect("channel present in trip"))
        .collect();
    let mut row = vec![0.0; channels.len() * FEATURES_PER_CHANNEL];
    for (w, range) in segment_ranges(trip.len(), window)?.into_iter().enumerate() {
        for (s, out) in series.iter().zip(row.chunks_mut(FEATURES_PER_CHANNEL)) {
            series_features(&s[range.clone()], out);
        }
        b.push(&row, label, &trip.trip_id, w);
    }
    Ok(b)
}

fn target_labels(trips: &[Trip], target: LabelName) -> Result<Vec<String>> {
    let mut missing = Vec::new();
    let labels: Vec<String> = trips
        .iter()
        .map(|t| {
            t.labels.get(target).unwrap_or_else(|| {
                missing.push(t.trip_id.clone());
                String::new()
            })
        })
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingLabel {
            label: target.as_str().to_string(),
            trips: missing,
        });
    }
    Ok(labels)
}

fn merge(names: Vec<String>, parts: Vec<MatrixBuilder>) -> FeatureMatrix {
    let mut all = MatrixBuilder::new(names);
    for p in parts {
        all.extend(p);
    }
    all.finish()
}

/// Per-sample flow over many trips, labelled by `target`.
pub fn per_sample_matrix(trips: &[Trip], channels: &[Channel], target: LabelName) -> Result<FeatureMatrix> {
    let labels = target_labels(trips, target)?;
    let idx: Vec<usize> = (0..trips.len()).collect();
    let parts = par::map(&idx, |&i| per_sample_rows(&trips[i], channels, &labels[i]));
    Ok(merge(channels.iter().map(|c| c.name().to_string()).collect(), parts))
}

/// Catalog flow over many trips: every window of every trip becomes a row.
pub fn catalog_matrix(
    trips: &[Trip],
    channels: &[Channel],
    window: &WindowSpec,
    target: LabelName,
) -> Result<FeatureMatrix> {
    window.validate()?;
    let labels = target_labels(trips, target)?;
    let idx: Vec<usize> = (0..trips.len()).collect();
    let parts = par::try_map(&idx, |&i| catalog_rows(&trips[i], channels, window, &labels[i]))?;
    Ok(merge(catalog_names(channels), parts))
}
