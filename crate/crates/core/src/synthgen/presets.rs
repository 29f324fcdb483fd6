use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::telemetry::Style;

/// Longitudinal-dynamics parameters of one vehicle model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VehicleParams {
    pub name: String,
    pub mass_kg: f64,
    /// Drag coefficient times frontal area, m².
    pub drag_area_m2: f64,
    pub rolling_coeff: f64,
    pub drivetrain_eff: f64,
    pub regen_eff: f64,
    pub capacity_wh: f64,
    pub wheel_radius_m: f64,
    pub gear_ratio: f64,
}

impl VehicleParams {
    #[allow(clippy::too_many_arguments)]
    fn preset(
        name: &str,
        mass_kg: f64,
        drag_area_m2: f64,
        rolling_coeff: f64,
        drivetrain_eff: f64,
        regen_eff: f64,
        capacity_wh: f64,
        wheel_radius_m: f64,
        gear_ratio: f64,
    ) -> Self {
        VehicleParams {
            name: name.into(),
            mass_kg,
            drag_area_m2,
            rolling_coeff,
            drivetrain_eff,
            regen_eff,
            capacity_wh,
            wheel_radius_m,
            gear_ratio,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.mass_kg,
            self.drag_area_m2,
            self.rolling_coeff,
            self.capacity_wh,
            self.wheel_radius_m,
            self.gear_ratio,
        ];
        if positive.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::Invalid(format!(
                "vehicle `{}` has a non-positive parameter",
                self.name
            )));
        }
        if !(self.drivetrain_eff > 0.0 && self.drivetrain_eff <= 1.0) {
            return Err(Error::Invalid(format!(
                "vehicle `{}`: drivetrain efficiency outside (0, 1]",
                self.name
            )));
        }
        if !(0.0..1.0).contains(&self.regen_eff) {
            return Err(Error::Invalid(format!(
                "vehicle `{}`: regen efficiency outside [0, 1)",
                self.name
            )));
        }
        Ok(())
    }

    /// The five models of the simulated grid.
    pub fn simulated_fleet() -> Vec<VehicleParams> {
        vec![
            Self::preset("bmw_i3", 1345.0, 0.69, 0.0085, 0.90, 0.65, 42_200.0, 0.35, 9.7),
            Self::preset("vw_id3", 1800.0, 0.63, 0.0090, 0.91, 0.65, 58_000.0, 0.36, 11.5),
            Self::preset("vw_id4", 2124.0, 0.72, 0.0095, 0.90, 0.63, 77_000.0, 0.37, 11.5),
            Self::preset("vw_eup", 1235.0, 0.64, 0.0095, 0.88, 0.60, 32_300.0, 0.30, 8.2),
            Self::preset("generic_suv", 2400.0, 0.96, 0.0110, 0.87, 0.60, 90_000.0, 0.38, 10.0),
        ]
    }

    /// The two models of the real-trip style driver setup.
    pub fn driver_fleet() -> Vec<VehicleParams> {
        vec![
            Self::preset(
                "nissan_leaf_e_plus",
                1750.0,
                0.64,
                0.0090,
                0.90,
                0.62,
                62_000.0,
                0.33,
                8.2,
            ),
            Self::preset("dacia_spring", 1045.0, 0.78, 0.0100, 0.86, 0.55, 26_800.0, 0.29, 9.1),
        ]
    }
}

/// How one driver tracks speed limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriverProfile {
    pub driver_id: String,
    pub style: Style,
    /// Multiplier applied to every speed limit.
    pub speed_multiplier: f64,
    /// Comfortable acceleration, m/s².
    pub accel_ms2: f64,
    /// Comfortable deceleration, m/s².
    pub decel_ms2: f64,
    /// Relative amplitude of the speed-tracking noise.
    pub speed_noise: f64,
    /// Speed-tracking time constant, s.
    pub response_s: f64,
    /// Relative amplitude of a periodic swing around the target speed.
    pub sway_amplitude: f64,
    pub sway_period_s: f64,
}

impl DriverProfile {
    pub fn for_style(style: Style) -> Self {
        let (speed_multiplier, accel_ms2, decel_ms2, speed_noise, response_s) = match style {
            Style::Aggressive => (1.18, 2.8, 3.4, 0.008, 1.5),
            Style::Moderate => (1.0, 1.6, 2.2, 0.005, 2.5),
            Style::Defensive => (0.84, 0.8, 1.2, 0.003, 4.0),
        };
        DriverProfile {
            driver_id: format!("driver_{style}"),
            style,
            speed_multiplier,
            accel_ms2,
            decel_ms2,
            speed_noise,
            response_s,
            sway_amplitude: 0.0,
            sway_period_s: 60.0,
        }
    }

    /// Four drivers with personal habits for the driver-identification setup.
    pub fn driver_panel() -> Vec<DriverProfile> {
        let p = |id: &str, style, m, a, d, n, r, sa, sp| DriverProfile {
            driver_id: id.into(),
            style,
            speed_multiplier: m,
            accel_ms2: a,
            decel_ms2: d,
            speed_noise: n,
            response_s: r,
            sway_amplitude: sa,
            sway_period_s: sp,
        };
        vec![
            p("driver_a", Style::Aggressive, 1.08, 2.2, 2.8, 0.006, 1.8, 0.06, 40.0),
            p("driver_b", Style::Moderate, 0.95, 1.4, 2.0, 0.004, 3.0, 0.02, 90.0),
            p("driver_c", Style::Moderate, 1.02, 1.9, 1.6, 0.009, 2.2, 0.10, 25.0),
            p("driver_d", Style::Defensive, 0.90, 1.1, 2.6, 0.005, 3.6, 0.04, 60.0),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.speed_multiplier,
            self.accel_ms2,
            self.decel_ms2,
            self.response_s,
            self.sway_period_s,
        ];
        if positive.iter().any(|&v| !(v > 0.0)) || self.speed_noise < 0.0 || self.sway_amplitude < 0.0 {
            return Err(Error::Invalid(format!(
                "driver `{}` has an invalid parameter",
                self.driver_id
            )));
        }
        Ok(())
    }
}

/// Everything written to `presets.json`.
#[derive(Debug, Serialize)]
pub struct PresetCatalog {
    pub simulated_fleet: Vec<VehicleParams>,
    pub driver_fleet: Vec<VehicleParams>,
    pub styles: Vec<DriverProfile>,
    pub driver_panel: Vec<DriverProfile>,
    pub occupant_mass_kg: f64,
    pub sample_period_s: f64,
}

impl PresetCatalog {
    pub fn current() -> Self {
        PresetCatalog {
            simulated_fleet: VehicleParams::simulated_fleet(),
            driver_fleet: VehicleParams::driver_fleet(),
            styles: Style::ALL.iter().map(|&s| DriverProfile::for_style(s)).collect(),
            driver_panel: DriverProfile::driver_panel(),
            occupant_mass_kg: super::OCCUPANT_MASS_KG,
            sample_period_s: super::SAMPLE_PERIOD_S,
        }
    }
}
