use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::featurex::WindowSpec;
use crate::telemetry::LabelName;

pub const DEFAULT_REGION_FRACTION: f64 = 0.2;
pub const DRIVER_WINDOW: usize = 10;
pub const REGION_WINDOW: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Style,
    Vehicle,
    Occupancy,
    Auxiliary,
    Driver,
    Origin,
    Destination,
}

impl Objective {
    pub const ALL: [Objective; 7] = [
        Objective::Style,
        Objective::Vehicle,
        Objective::Occupancy,
        Objective::Auxiliary,
        Objective::Driver,
        Objective::Origin,
        Objective::Destination,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Style => "style",
            Objective::Vehicle => "vehicle",
            Objective::Occupancy => "occupancy",
            Objective::Auxiliary => "auxiliary",
            Objective::Driver => "driver",
            Objective::Origin => "origin",
            Objective::Destination => "destination",
        }
    }

    pub fn target(self) -> LabelName {
        match self {
            Objective::Style => LabelName::Style,
            Objective::Vehicle => LabelName::Vehicle,
            Objective::Occupancy => LabelName::Occupancy,
            Objective::Auxiliary => LabelName::AuxW,
            Objective::Driver => LabelName::Driver,
            Objective::Origin => LabelName::Origin,
            Objective::Destination => LabelName::Destination,
        }
    }

    /// Parses a comma-separated list; `all` expands to every objective.
    pub fn parse_list(s: &str) -> std::result::Result<Vec<Objective>, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part.eq_ignore_ascii_case("all") {
                out.extend(Objective::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort_unstable();
        out.dedup();
        if out.is_empty() {
            return Err("no objective given".into());
        }
        Ok(out)
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        Objective::ALL
            .into_iter()
            .find(|o| o.as_str() == s || (s == "aux" && *o == Objective::Auxiliary))
            .ok_or_else(|| format!("unknown objective `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flow {
    /// Raw channel values of single readings.
    PerSample,
    /// Catalog features over windows.
    Catalog,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackSpec {
    pub objective: Objective,
    pub flow: Flow,
    pub window: WindowSpec,
    pub target_label: LabelName,
    pub region_fraction: f64,
}

/// The pipeline each objective is run with.
pub fn canonical_spec(objective: Objective) -> AttackSpec {
    let f = DEFAULT_REGION_FRACTION;
    let (flow, window) = match objective {
        Objective::Style | Objective::Vehicle => (Flow::PerSample, WindowSpec::PerSample),
        Objective::Occupancy | Objective::Auxiliary => (Flow::Catalog, WindowSpec::FullTrip),
        Objective::Driver => (Flow::Catalog, WindowSpec::Fixed { n: DRIVER_WINDOW }),
        Objective::Origin => (
            Flow::Catalog,
            WindowSpec::Head {
                fraction: f,
                n: REGION_WINDOW,
            },
        ),
        Objective::Destination => (
            Flow::Catalog,
            WindowSpec::Tail {
                fraction: f,
                n: REGION_WINDOW,
            },
        ),
    };
    AttackSpec {
        objective,
        flow,
        window,
        target_label: objective.target(),
        region_fraction: f,
    }
}

impl AttackSpec {
    /// Same spec with another head/tail region fraction.
    pub fn with_fraction(mut self, fraction: f64) -> Result<Self> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::Invalid(format!("region fraction {fraction} outside (0, 1]")));
        }
        self.region_fraction = fraction;
        self.window = match self.window {
            WindowSpec::Head { n, .. } => WindowSpec::Head { fraction, n },
            WindowSpec::Tail { n, .. } => WindowSpec::Tail { fraction, n },
            other => other,
        };
        Ok(self)
    }
}
