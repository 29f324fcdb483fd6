use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const KMH: f64 = 1.0 / 3.6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub length_m: f64,
    pub limit_ms: f64,
    /// Road grade, rad.
    pub slope_rad: f64,
    /// Standstill at the end of the segment, s. Zero means drive through.
    pub stop_s: f64,
}

impl Segment {
    pub fn new(length_m: f64, limit_kmh: f64, slope_rad: f64, stop_s: f64) -> Self {
        Segment {
            length_m,
            limit_ms: limit_kmh * KMH,
            slope_rad,
            stop_s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteProfile {
    pub route_id: String,
    pub origin: String,
    pub destination: String,
    pub segments: Vec<Segment>,
    /// Simulation stops here even if the route is not finished.
    pub max_duration_s: f64,
}

impl RouteProfile {
    pub fn validate(&self) -> Result<()> {
        if self.segments.len() < 2 {
            return Err(Error::Invalid(format!(
                "route `{}` needs at least two segments",
                self.route_id
            )));
        }
        let bad = self
            .segments
            .iter()
            .any(|s| !(s.length_m > 0.0) || s.limit_ms < 0.0 || s.stop_s < 0.0 || !s.slope_rad.is_finite());
        if bad || !(self.max_duration_s > 0.0) {
            return Err(Error::Invalid(format!(
                "route `{}` has an invalid segment",
                self.route_id
            )));
        }
        Ok(())
    }

    pub fn length_m(&self) -> f64 {
        self.segments.iter().map(|s| s.length_m).sum()
    }

    /// (first segment limit and slope, last segment limit and slope).
    pub fn signature(&self) -> ((f64, f64), (f64, f64)) {
        let f = self.segments[0];
        let l = self.segments[self.segments.len() - 1];
        ((f.limit_ms, f.slope_rad), (l.limit_ms, l.slope_rad))
    }
}

/// A place trips start or end at, with the road leaving it and the road
/// arriving at it.
#[derive(Debug, Clone, Copy)]
struct City {
    name: &'static str,
    depart: (f64, f64, f64),
    arrive: (f64, f64, f64),
}

// (length m, limit km/h, grade rad)
const CITIES: [City; 10] = [
    City {
        name: "city_00",
        depart: (700.0, 30.0, 0.045),
        arrive: (650.0, 40.0, -0.030),
    },
    City {
        name: "city_01",
        depart: (900.0, 50.0, -0.025),
        arrive: (600.0, 30.0, 0.050),
    },
    City {
        name: "city_02",
        depart: (800.0, 40.0, 0.000),
        arrive: (900.0, 60.0, 0.015),
    },
    City {
        name: "city_03",
        depart: (1000.0, 60.0, 0.020),
        arrive: (800.0, 50.0, -0.050),
    },
    City {
        name: "city_04",
        depart: (650.0, 30.0, -0.050),
        arrive: (1000.0, 70.0, 0.000),
    },
    City {
        name: "city_05",
        depart: (1100.0, 70.0, 0.050),
        arrive: (600.0, 30.0, -0.015),
    },
    City {
        name: "city_06",
        depart: (750.0, 40.0, -0.035),
        arrive: (800.0, 50.0, 0.035),
    },
    City {
        name: "city_07",
        depart: (900.0, 50.0, 0.010),
        arrive: (700.0, 40.0, -0.040),
    },
    City {
        name: "city_08",
        depart: (1000.0, 60.0, -0.040),
        arrive: (900.0, 60.0, 0.040),
    },
    City {
        name: "city_09",
        depart: (650.0, 30.0, 0.020),
        arrive: (650.0, 30.0, 0.000),
    },
];

pub const N_CITIES: usize = CITIES.len();

/// Ordered (origin, destination) city pairs; the first seven cover the
/// compact grids.
pub const ROUTE_PAIRS: [(usize, usize); 21] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 8),
    (8, 9),
    (9, 0),
    (0, 3),
    (1, 4),
    (2, 5),
    (3, 6),
    (4, 7),
    (5, 8),
    (6, 9),
    (7, 0),
    (8, 1),
    (9, 2),
    (0, 5),
];

pub fn city_name(i: usize) -> &'static str {
    CITIES[i].name
}

/// Route `i` of the catalog: departure road, three route-specific
/// middle roads with one signalised stop, arrival road.
pub fn route(i: usize) -> RouteProfile {
    let (o, d) = ROUTE_PAIRS[i];
    let (dl, dv, ds) = CITIES[o].depart;
    let (al, av, aslope) = CITIES[d].arrive;
    // middle roads vary deterministically with the route index
    let k = i as f64;
    let mid_limits = [
        60.0 + 10.0 * (i % 3) as f64,
        80.0 + 10.0 * (i % 4) as f64,
        50.0 + 10.0 * (i % 2) as f64,
    ];
    let mid_slopes = [
        0.01 * ((i % 5) as f64 - 2.0),
        -0.008 * ((i % 3) as f64 - 1.0),
        0.006 * ((i % 4) as f64 - 1.5),
    ];
    let segments = vec![
        Segment::new(dl, dv, ds, 0.0),
        Segment::new(
            900.0 + 40.0 * k,
            mid_limits[0],
            mid_slopes[0],
            12.0 + 2.0 * (i % 4) as f64,
        ),
        Segment::new(1400.0 + 25.0 * k, mid_limits[1], mid_slopes[1], 0.0),
        Segment::new(700.0 + 20.0 * k, mid_limits[2], mid_slopes[2], 0.0),
        Segment::new(al, av, aslope, 0.0),
    ];
    RouteProfile {
        route_id: format!("route_{i:02}"),
        origin: CITIES[o].name.into(),
        destination: CITIES[d].name.into(),
        segments,
        max_duration_s: 1800.0,
    }
}

pub fn catalog(n: usize) -> Vec<RouteProfile> {
    (0..n.min(ROUTE_PAIRS.len())).map(route).collect()
}
