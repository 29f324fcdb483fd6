use super::presets::VehicleParams;

pub const AIR_DENSITY: f64 = 1.225;
pub const GRAVITY: f64 = 9.81;

/// Force at the wheels, N.
pub fn tractive_force(v: f64, a: f64, slope: f64, vp: &VehicleParams, total_mass: f64) -> f64 {
    total_mass * a
        + 0.5 * AIR_DENSITY * vp.drag_area_m2 * v * v
        + vp.rolling_coeff * total_mass * GRAVITY
        + total_mass * GRAVITY * slope.sin()
}

/// Power at the wheels, W. Negative while braking or descending.
pub fn traction_power(v: f64, a: f64, slope: f64, vp: &VehicleParams, total_mass: f64) -> f64 {
    total_mass * a * v
        + 0.5 * AIR_DENSITY * vp.drag_area_m2 * v.powi(3)
        + vp.rolling_coeff * total_mass * GRAVITY * v
        + total_mass * GRAVITY * slope.sin() * v
}

/// Signed battery power, W: drivetrain losses when driving, partial
/// recovery when braking, and the auxiliary load on top.
pub fn instantaneous_power(v: f64, a: f64, slope: f64, vp: &VehicleParams, total_mass: f64, aux_w: f64) -> f64 {
    let p = traction_power(v, a, slope, vp, total_mass);
    if p >= 0.0 {
        p / vp.drivetrain_eff + aux_w
    } else {
        vp.regen_eff * p + aux_w
    }
}
