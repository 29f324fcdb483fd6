use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::telemetry::{TelemetrySample, Trip};

/// How a trip is cut into sample windows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum WindowSpec {
    /// One window per sample.
    PerSample,
    /// The whole trip as one window.
    FullTrip,
    /// Consecutive non-overlapping windows of `n` samples.
    Fixed { n: usize },
    /// Fixed windows inside the first `ceil(fraction * len)` samples.
    Head { fraction: f64, n: usize },
    /// Fixed windows inside the last `ceil(fraction * len)` samples.
    Tail { fraction: f64, n: usize },
}

impl WindowSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WindowSpec::PerSample | WindowSpec::FullTrip => Ok(()),
            WindowSpec::Fixed { n } => check_n(n),
            WindowSpec::Head { fraction, n } | WindowSpec::Tail { fraction, n } => {
                check_n(n)?;
                if !(fraction > 0.0 && fraction <= 1.0) {
                    return Err(Error::Invalid(format!("window fraction {fraction} outside (0, 1]")));
                }
                Ok(())
            }
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Invalid(format!("window length {n} < 2")));
    }
    Ok(())
}

fn fixed(range: Range<usize>, n: usize) -> Vec<Range<usize>> {
    let count = range.len() / n;
    (0..count)
        .map(|k| range.start + k * n..range.start + (k + 1) * n)
        .collect()
}

fn region_len(len: usize, fraction: f64) -> usize {
    // guard against 0.2 * 100 landing a hair above 20
    ((fraction * len as f64 - 1e-9).ceil().max(0.0) as usize).min(len)
}

/// Sample-index ranges of the windows of a trip with `len` samples.
///
/// Trailing partial windows are dropped; a head/tail region shorter than
/// `n` yields no windows.
pub fn segment_ranges(len: usize, spec: &WindowSpec) -> Result<Vec<Range<usize>>> {
    spec.validate()?;
    Ok(match *spec {
        WindowSpec::PerSample => (0..len).map(|i| i..i + 1).collect(),
        WindowSpec::FullTrip => {
            if len == 0 {
                Vec::new()
            } else {
                vec![0..len]
            }
        }
        WindowSpec::Fixed { n } => fixed(0..len, n),
        WindowSpec::Head { fraction, n } => fixed(0..region_len(len, fraction), n),
        WindowSpec::Tail { fraction, n } => fixed(len - region_len(len, fraction)..len, n),
    })
}

/// The windows of a trip as sample slices.
pub fn segment<'t>(trip: &'t Trip, spec: &WindowSpec) -> Result<Vec<&'t [TelemetrySample]>> {
    Ok(segment_ranges(trip.len(), spec)?
        .into_iter()
        .map(|r| &trip.samples[r])
        .collect())
}
