use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::presets::{DriverProfile, VehicleParams};
use super::routes;
use super::sim::ScenarioConfig;
use crate::telemetry::Style;

/// Named scenario grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// 5 vehicles, 3 styles, 5 occupancies, 4 aux levels, 7 routes, 3 replicates.
    Desk,
    /// 5 vehicles, 3 styles, 5 occupancies, 3 aux levels, 21 routes, 9 replicates.
    Full,
    /// 4 drivers, 2 vehicles, 7 routes, 6 replicates.
    Drivers,
}

impl Scale {
    pub fn as_str(self) -> &'static str {
        match self {
            Scale::Desk => "desk",
            Scale::Full => "full",
            Scale::Drivers => "drivers",
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "desk" => Ok(Scale::Desk),
            "full" => Ok(Scale::Full),
            "drivers" => Ok(Scale::Drivers),
            other => Err(format!("unknown scale `{other}` (expected desk, full or drivers)")),
        }
    }
}

pub const DESK_AUX_W: [f64; 4] = [0.0, 500.0, 1000.0, 1500.0];
pub const FULL_AUX_W: [f64; 3] = [0.0, 750.0, 1500.0];
const DRIVER_AUX_W: [f64; 3] = [200.0, 600.0, 1000.0];

fn style_grid(routes: usize, aux: &[f64], replicates: u64) -> Vec<ScenarioConfig> {
    let routes = routes::catalog(routes);
    let mut out = Vec::new();
    for vehicle in VehicleParams::simulated_fleet() {
        for style in Style::ALL {
            let driver = DriverProfile::for_style(style);
            for occupancy in 1..=5u8 {
                for &aux_w in aux {
                    for route in &routes {
                        for n in 0..replicates {
                            out.push(ScenarioConfig::new(
                                vehicle.clone(),
                                driver.clone(),
                                route.clone(),
                                occupancy,
                                aux_w,
                                n,
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every scenario of `scale`, in a fixed order.
pub fn scenario_grid(scale: Scale) -> Vec<ScenarioConfig> {
    match scale {
        Scale::Desk => style_grid(7, &DESK_AUX_W, 3),
        Scale::Full => style_grid(21, &FULL_AUX_W, 9),
        Scale::Drivers => {
            let routes = routes::catalog(7);
            let mut out = Vec::new();
            for driver in DriverProfile::driver_panel() {
                for vehicle in VehicleParams::driver_fleet() {
                    for route in &routes {
                        for n in 0..6u64 {
                            let aux = DRIVER_AUX_W[n as usize % DRIVER_AUX_W.len()];
                            let mut c = ScenarioConfig::new(vehicle.clone(), driver.clone(), route.clone(), 1, aux, n);
                            c.extras = true;
                            out.push(c);
                        }
                    }
                }
            }
            out
        }
    }
}
