use std::collections::HashSet;
use std::f64::consts::PI;

use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

use super::physics::{instantaneous_power, traction_power, tractive_force};
use super::presets::{DriverProfile, VehicleParams};
use super::routes::RouteProfile;
use super::{OCCUPANT_MASS_KG, SAMPLE_PERIOD_S};
use crate::error::{Error, Result};
use crate::telemetry::{Dataset, TelemetrySample, Trip, TripLabels};
use crate::{par, rng};

/// Integration steps per recorded sample.
const SUBSTEPS: usize = 4;
/// Correlation time of the speed noise, s.
const NOISE_TAU_S: f64 = 15.0;
const LOOKAHEAD_M: f64 = 600.0;
const CREEP_MS: f64 = 1.0;
const STOP_RADIUS_M: f64 = 1.5;

/// One simulated trip.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub vehicle: VehicleParams,
    pub driver: DriverProfile,
    pub route: RouteProfile,
    /// People on board, 1 to 5.
    pub occupancy: u8,
    pub aux_w: f64,
    pub sample_period_s: f64,
    /// Index of the traffic/noise replicate.
    pub noise_index: u64,
    /// Also record motor power, torque and rpm.
    pub extras: bool,
}

impl ScenarioConfig {
    pub fn new(
        vehicle: VehicleParams,
        driver: DriverProfile,
        route: RouteProfile,
        occupancy: u8,
        aux_w: f64,
        noise_index: u64,
    ) -> Self {
        ScenarioConfig {
            vehicle,
            driver,
            route,
            occupancy,
            aux_w,
            sample_period_s: SAMPLE_PERIOD_S,
            noise_index,
            extras: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.vehicle.validate()?;
        self.driver.validate()?;
        self.route.validate()?;
        if !(1..=5).contains(&self.occupancy) {
            return Err(Error::Invalid(format!("occupancy {} outside 1..=5", self.occupancy)));
        }
        if !(self.aux_w >= 0.0 && self.aux_w.is_finite()) {
            return Err(Error::Invalid(format!(
                "auxiliary load {} must be non-negative",
                self.aux_w
            )));
        }
        if !(self.sample_period_s > 0.0) {
            return Err(Error::Invalid("sample period must be positive".into()));
        }
        Ok(())
    }

    pub fn trip_id(&self) -> String {
        format!(
            "{}-{}-o{}-a{}-{}-n{}",
            self.vehicle.name, self.driver.driver_id, self.occupancy, self.aux_w, self.route.route_id, self.noise_index
        )
    }

    pub fn total_mass(&self) -> f64 {
        self.vehicle.mass_kg + OCCUPANT_MASS_KG * self.occupancy as f64
    }

    /// Seed of the speed profile. Vehicle, load and aux do not enter, so
    /// those factors see the same driving.
    pub fn speed_seed(&self, master_seed: u64) -> u64 {
        let key = format!("{}|{}|{}", self.route.route_id, self.driver.driver_id, self.noise_index);
        rng::derive(master_seed, &key, 0)
    }

    fn labels(&self) -> TripLabels {
        TripLabels {
            driver: Some(self.driver.driver_id.clone()),
            vehicle: Some(self.vehicle.name.clone()),
            style: Some(self.driver.style),
            occupancy: Some(self.occupancy),
            aux_w: Some(self.aux_w),
            origin: Some(self.route.origin.clone()),
            destination: Some(self.route.destination.clone()),
        }
    }
}

struct Boundary {
    pos: f64,
    /// Speed the driver wants when passing; 0 for a stop.
    speed: f64,
    stop_s: f64,
}

/// Simulates `cfg` with the speed-noise stream seeded by `seed`.
pub fn generate_trip(cfg: &ScenarioConfig, seed: u64) -> Result<Trip> {
    cfg.validate()?;
    let vp = &cfg.vehicle;
    let dp = &cfg.driver;
    let segs = &cfg.route.segments;
    let mass = cfg.total_mass();
    let h = cfg.sample_period_s / SUBSTEPS as f64;

    let mut ends = Vec::with_capacity(segs.len());
    let mut acc = 0.0;
    for (i, s) in segs.iter().enumerate() {
        acc += s.length_m;
        let last = i + 1 == segs.len();
        let speed = if last || s.stop_s > 0.0 {
            0.0
        } else {
            segs[i + 1].limit_ms * dp.speed_multiplier
        };
        ends.push(Boundary {
            pos: acc,
            speed,
            stop_s: if last { 0.0 } else { s.stop_s },
        });
    }
    let total_len = acc;

    let mut r = rng::rng(seed);
    let phi = (-h / NOISE_TAU_S).exp();
    let innov = (1.0 - phi * phi).sqrt();
    let z0: f64 = StandardNormal.sample(&mut r);
    let mut noise = dp.speed_noise * z0;
    let sway_phase = r.gen_range(0.0..2.0 * PI);

    let mut v = 0.0f64;
    let mut a = 0.0f64;
    let mut pos = 0.0f64;
    let mut seg = 0usize;
    let mut dwell = 0.0f64;
    let mut done = false;
    let mut t = 0.0f64;
    let mut consumed = 0.0f64;
    let mut regen = 0.0f64;
    let mut p_prev = instantaneous_power(0.0, 0.0, segs[0].slope_rad, vp, mass, cfg.aux_w);

    let record = |t: f64, consumed: f64, regen: f64, v: f64, a: f64, slope: f64| -> Result<TelemetrySample> {
        let net = consumed - regen;
        if net > vp.capacity_wh {
            return Err(Error::BatteryDepleted {
                trip: cfg.trip_id(),
                needed_wh: net,
                capacity_wh: vp.capacity_wh,
            });
        }
        let soc = (100.0 * (1.0 - net / vp.capacity_wh)).clamp(0.0, 100.0);
        let avg = if t > 0.0 { 1000.0 * net / (t / 3600.0) } else { 0.0 };
        let mut s = TelemetrySample::core(t, vp.capacity_wh, soc, consumed, regen, avg);
        if cfg.extras {
            s.motor_power_w = Some(traction_power(v, a, slope, vp, mass));
            s.torque_nm = Some(tractive_force(v, a, slope, vp, mass) * vp.wheel_radius_m / vp.gear_ratio);
            s.rpm = Some(v / vp.wheel_radius_m * vp.gear_ratio * 60.0 / (2.0 * PI));
        }
        Ok(s)
    };

    let mut samples = vec![record(0.0, 0.0, 0.0, 0.0, 0.0, segs[0].slope_rad)?];
    while !done && t < cfg.route.max_duration_s {
        for _ in 0..SUBSTEPS {
            let slope = segs[seg].slope_rad;
            if dwell > 0.0 || pos >= total_len {
                dwell = (dwell - h).max(0.0);
                a = 0.0;
                v = 0.0;
                if pos >= total_len {
                    done = true;
                }
            } else {
                let e: f64 = StandardNormal.sample(&mut r);
                noise = phi * noise + innov * dp.speed_noise * e;
                let sway = dp.sway_amplitude * (2.0 * PI * t / dp.sway_period_s + sway_phase).sin();
                let mut target = segs[seg].limit_ms * dp.speed_multiplier * (1.0 + noise + sway);
                let mut stop_now = false;
                for b in ends[seg..].iter().take_while(|b| b.pos - pos <= LOOKAHEAD_M) {
                    let d = (b.pos - pos).max(0.0);
                    if b.speed == 0.0 && d < STOP_RADIUS_M && b.pos <= ends[seg].pos {
                        stop_now = true;
                        break;
                    }
                    let mut env = (b.speed * b.speed + 2.0 * 0.8 * dp.decel_ms2 * d).sqrt();
                    if b.speed == 0.0 {
                        env = env.max(CREEP_MS);
                    }
                    target = target.min(env);
                }
                if stop_now {
                    a = -v / h;
                    v = 0.0;
                    pos = ends[seg].pos;
                    dwell = ends[seg].stop_s;
                    if seg + 1 < segs.len() {
                        seg += 1;
                    }
                } else {
                    target = target.max(0.0);
                    a = ((target - v) / dp.response_s).clamp(-dp.decel_ms2, dp.accel_ms2);
                    if v + a * h < 0.0 {
                        a = -v / h;
                    }
                    let v_new = v + a * h;
                    pos += 0.5 * (v + v_new) * h;
                    v = v_new;
                }
                while seg + 1 < segs.len() && pos >= ends[seg].pos {
                    if ends[seg].stop_s > 0.0 {
                        // overshot a stop line
                        pos = ends[seg].pos;
                        v = 0.0;
                        dwell = ends[seg].stop_s;
                    }
                    seg += 1;
                }
                if seg + 1 == segs.len() && pos >= total_len - STOP_RADIUS_M && v <= CREEP_MS {
                    pos = total_len;
                }
            }
            t += h;
            let p = instantaneous_power(v, a, slope, vp, mass, cfg.aux_w);
            let e_wh = 0.5 * (p_prev + p) * h / 3600.0;
            p_prev = p;
            if e_wh >= 0.0 {
                consumed += e_wh;
            } else {
                regen = (regen - e_wh).min(consumed);
            }
        }
        let k = samples.len() as f64;
        samples.push(record(
            k * cfg.sample_period_s,
            consumed,
            regen,
            v,
            a,
            segs[seg].slope_rad,
        )?);
    }
    Trip::new(cfg.trip_id(), samples, cfg.labels())
}

/// One trip per config, speed streams derived from `master_seed`.
pub fn generate_dataset(grid: &[ScenarioConfig], master_seed: u64) -> Result<Dataset> {
    if grid.is_empty() {
        return Err(Error::Invalid("empty scenario grid".into()));
    }
    let mut seen = HashSet::new();
    for c in grid {
        let id = c.trip_id();
        if !seen.insert(id.clone()) {
            return Err(Error::Invalid(format!("duplicate trip id `{id}`")));
        }
    }
    let trips = par::try_map(grid, |c| generate_trip(c, c.speed_seed(master_seed)))?;
    Dataset::new(trips)
}
