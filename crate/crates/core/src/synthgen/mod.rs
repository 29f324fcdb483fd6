//! Seeded generator of labelled battery traces. A longitudinal-dynamics
//! model turns a driver tracking speed limits along a route into battery
//! power, which is integrated into the recorded cumulative channels.

mod grid;
mod physics;
mod presets;
mod routes;
mod sim;

use std::path::Path;

pub use grid::{scenario_grid, Scale, DESK_AUX_W, FULL_AUX_W};
pub use physics::{instantaneous_power, traction_power, tractive_force, AIR_DENSITY, GRAVITY};
pub use presets::{DriverProfile, PresetCatalog, VehicleParams};
pub use routes::{city_name, route, RouteProfile, Segment, N_CITIES, ROUTE_PAIRS};
pub use sim::{generate_dataset, generate_trip, ScenarioConfig};

use crate::error::{Error, Result};
use crate::telemetry::{write_dataset_dir, Dataset};

pub const OCCUPANT_MASS_KG: f64 = 75.0;
pub const SAMPLE_PERIOD_S: f64 = 2.0;
pub const PRESETS_FILE: &str = "presets.json";

pub fn generate_scale(scale: Scale, seed: u64) -> Result<Dataset> {
    generate_dataset(&scenario_grid(scale), seed)
}

pub fn write_presets(dir: &Path) -> Result<()> {
    let path = dir.join(PRESETS_FILE);
    let mut text = serde_json::to_string_pretty(&PresetCatalog::current())?;
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| Error::io(&path, e))
}

/// Generates `scale` and writes samples, labels and presets into `dir`.
pub fn synthesize_to_dir(scale: Scale, seed: u64, dir: &Path) -> Result<Dataset> {
    let ds = generate_scale(scale, seed)?;
    write_dataset_dir(&ds, dir)?;
    write_presets(dir)?;
    Ok(ds)
}

#[cfg(test)]
mod tests;
