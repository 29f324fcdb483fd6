use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One timestamped reading of the battery channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TelemetrySample {
    /// Seconds since trip start.
    pub t: f64,
    pub capacity_wh: f64,
    pub soc_pct: f64,
    /// Cumulative energy drawn from the battery.
    pub energy_consumed_wh: f64,
    /// Cumulative energy recovered by regenerative braking.
    pub energy_regen_wh: f64,
    pub consumption_avg_mwh: f64,
    pub soh_pct: Option<f64>,
    pub motor_power_w: Option<f64>,
    pub torque_nm: Option<f64>,
    pub rpm: Option<f64>,
}

impl TelemetrySample {
    pub fn core(
        t: f64,
        capacity_wh: f64,
        soc_pct: f64,
        energy_consumed_wh: f64,
        energy_regen_wh: f64,
        consumption_avg_mwh: f64,
    ) -> Self {
        TelemetrySample {
            t,
            capacity_wh,
            soc_pct,
            energy_consumed_wh,
            energy_regen_wh,
            consumption_avg_mwh,
            soh_pct: None,
            motor_power_w: None,
            torque_nm: None,
            rpm: None,
        }
    }

    pub fn get(&self, channel: Channel) -> Option<f64> {
        match channel {
            Channel::Capacity => Some(self.capacity_wh),
            Channel::Soc => Some(self.soc_pct),
            Channel::EnergyConsumed => Some(self.energy_consumed_wh),
            Channel::EnergyRegen => Some(self.energy_regen_wh),
            Channel::ConsumptionAvg => Some(self.consumption_avg_mwh),
            Channel::Soh => self.soh_pct,
            Channel::MotorPower => self.motor_power_w,
            Channel::Torque => self.torque_nm,
            Channel::Rpm => self.rpm,
        }
    }

    /// Checks the per-sample range invariants.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let finite = [
            self.t,
            self.capacity_wh,
            self.soc_pct,
            self.energy_consumed_wh,
            self.energy_regen_wh,
            self.consumption_avg_mwh,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err("non-finite value".into());
        }
        if self.t < 0.0 {
            return Err(format!("negative timestamp {}", self.t));
        }
        if self.capacity_wh <= 0.0 {
            return Err(format!("capacity_wh must be positive, got {}", self.capacity_wh));
        }
        if !(0.0..=100.0).contains(&self.soc_pct) {
            return Err(format!("soc_pct {} outside [0, 100]", self.soc_pct));
        }
        if let Some(soh) = self.soh_pct {
            if !(0.0..=100.0).contains(&soh) {
                return Err(format!("soh_pct {soh} outside [0, 100]"));
            }
        }
        Ok(())
    }
}

/// A battery channel usable as a model input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    Capacity,
    Soc,
    EnergyConsumed,
    EnergyRegen,
    ConsumptionAvg,
    Soh,
    MotorPower,
    Torque,
    Rpm,
}

impl Channel {
    pub const CORE: [Channel; 5] = [
        Channel::Capacity,
        Channel::Soc,
        Channel::EnergyConsumed,
        Channel::EnergyRegen,
        Channel::ConsumptionAvg,
    ];
    pub const EXTRAS: [Channel; 4] = [Channel::Soh, Channel::MotorPower, Channel::Torque, Channel::Rpm];
    pub const ALL: [Channel; 9] = [
        Channel::Capacity,
        Channel::Soc,
        Channel::EnergyConsumed,
        Channel::EnergyRegen,
        Channel::ConsumptionAvg,
        Channel::Soh,
        Channel::MotorPower,
        Channel::Torque,
        Channel::Rpm,
    ];

    /// CSV column name.
    pub fn name(self) -> &'static str {
        match self {
            Channel::Capacity => "capacity_wh",
            Channel::Soc => "soc_pct",
            Channel::EnergyConsumed => "energy_consumed_wh",
            Channel::EnergyRegen => "energy_regen_wh",
            Channel::ConsumptionAvg => "consumption_avg_mwh",
            Channel::Soh => "soh_pct",
            Channel::MotorPower => "motor_power_w",
            Channel::Torque => "torque_nm",
            Channel::Rpm => "rpm",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Style {
    Aggressive,
    Moderate,
    Defensive,
}

impl Style {
    pub const ALL: [Style; 3] = [Style::Aggressive, Style::Moderate, Style::Defensive];

    pub fn as_str(self) -> &'static str {
        match self {
            Style::Aggressive => "aggressive",
            Style::Moderate => "moderate",
            Style::Defensive => "defensive",
        }
    }
}

impl FromStr for Style {
    type Err = String;

    /// Accepts "neutral" as an alias of the middle style.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "aggressive" => Ok(Style::Aggressive),
            "moderate" | "neutral" => Ok(Style::Moderate),
            "defensive" => Ok(Style::Defensive),
            other => Err(format!("unknown driving style `{other}`")),
        }
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Names of the per-trip ground-truth labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelName {
    Driver,
    Vehicle,
    Style,
    Occupancy,
    #[serde(rename = "aux_w")]
    AuxW,
    Origin,
    Destination,
}

impl LabelName {
    pub const ALL: [LabelName; 7] = [
        LabelName::Driver,
        LabelName::Vehicle,
        LabelName::Style,
        LabelName::Occupancy,
        LabelName::AuxW,
        LabelName::Origin,
        LabelName::Destination,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LabelName::Driver => "driver",
            LabelName::Vehicle => "vehicle",
            LabelName::Style => "style",
            LabelName::Occupancy => "occupancy",
            LabelName::AuxW => "aux_w",
            LabelName::Origin => "origin",
            LabelName::Destination => "destination",
        }
    }
}

impl fmt::Display for LabelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TripLabels {
    pub driver: Option<String>,
    pub vehicle: Option<String>,
    pub style: Option<Style>,
    pub occupancy: Option<u8>,
    pub aux_w: Option<f64>,
    pub origin: Option<String>,
    pub destination: Option<String>,
}

impl TripLabels {
    /// The label rendered as a class name, if present.
    pub fn get(&self, name: LabelName) -> Option<String> {
        match name {
            LabelName::Driver => self.driver.clone(),
            LabelName::Vehicle => self.vehicle.clone(),
            LabelName::Style => self.style.map(|s| s.as_str().to_string()),
            LabelName::Occupancy => self.occupancy.map(|o| o.to_string()),
            LabelName::AuxW => self.aux_w.map(|w| w.to_string()),
            LabelName::Origin => self.origin.clone(),
            LabelName::Destination => self.destination.clone(),
        }
    }

    pub fn present(&self) -> impl Iterator<Item = LabelName> + '_ {
        LabelName::ALL.into_iter().filter(|&n| self.get(n).is_some())
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if let Some(o) = self.occupancy {
            if !(1..=5).contains(&o) {
                return Err(format!("occupancy {o} outside [1, 5]"));
            }
        }
        if let Some(w) = self.aux_w {
            if !w.is_finite() || w < 0.0 {
                return Err(format!("aux_w {w} must be a non-negative number"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trip {
    pub trip_id: String,
    pub samples: Vec<TelemetrySample>,
    pub labels: TripLabels,
}

impl Trip {
    /// Builds a trip and checks its invariants.
    pub fn new(trip_id: impl Into<String>, samples: Vec<TelemetrySample>, labels: TripLabels) -> Result<Self> {
        let trip = Trip {
            trip_id: trip_id.into(),
            samples,
            labels,
        };
        trip.validate()?;
        Ok(trip)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Error::Invalid(format!("trip `{}`: {msg}", self.trip_id));
        if self.samples.len() < 2 {
            return Err(bad(format!("{} sample(s), at least 2 required", self.samples.len())));
        }
        for (i, s) in self.samples.iter().enumerate() {
            s.validate().map_err(|m| bad(format!("sample {i}: {m}")))?;
        }
        for (i, w) in self.samples.windows(2).enumerate() {
            if w[1].t <= w[0].t {
                return Err(bad(format!("timestamps not strictly increasing at sample {}", i + 1)));
            }
            if w[1].energy_consumed_wh < w[0].energy_consumed_wh {
                return Err(bad(format!("energy_consumed_wh decreases at sample {}", i + 1)));
            }
            if w[1].energy_regen_wh < w[0].energy_regen_wh {
                return Err(bad(format!("energy_regen_wh decreases at sample {}", i + 1)));
            }
        }
        self.labels.validate().map_err(bad)
    }

    /// Values of one channel along the trip, if every sample carries it.
    pub fn channel(&self, channel: Channel) -> Option<Vec<f64>> {
        self.samples.iter().map(|s| s.get(channel)).collect()
    }

    pub fn has_channel(&self, channel: Channel) -> bool {
        self.samples.iter().all(|s| s.get(channel).is_some())
    }
}

/// An immutable collection of trips with unique ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub trips: Vec<Trip>,
    pub label_schema: BTreeSet<LabelName>,
}

impl Dataset {
    pub fn new(trips: Vec<Trip>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(trips.len());
        for t in &trips {
            if !seen.insert(t.trip_id.as_str()) {
                return Err(Error::Invalid(format!("duplicate trip_id `{}`", t.trip_id)));
            }
        }
        let label_schema = trips.iter().flat_map(|t| t.labels.present()).collect();
        Ok(Dataset { trips, label_schema })
    }

    pub fn len(&self) -> usize {
        self.trips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trips.is_empty()
    }

    /// Channels carried by every sample of every trip, in canonical order.
    pub fn common_channels(&self) -> Vec<Channel> {
        Channel::ALL
            .into_iter()
            .filter(|&c| !self.trips.is_empty() && self.trips.iter().all(|t| t.has_channel(c)))
            .collect()
    }

    pub fn total_samples(&self) -> usize {
        self.trips.iter().map(Trip::len).sum()
    }
}
