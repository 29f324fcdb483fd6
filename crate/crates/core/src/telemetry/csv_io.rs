use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::types::{Channel, Dataset, LabelName, TelemetrySample, Trip, TripLabels};
use crate::error::{Error, Result};

/// Samples file name inside a dataset directory.
pub const SAMPLES_FILE: &str = "samples.csv";
/// Labels file name inside a dataset directory.
pub const LABELS_FILE: &str = "labels.csv";

fn header_index(headers: &csv::StringRecord) -> HashMap<String, usize> {
    headers
        .iter()
        .enumerate()
        .map(|(i, h)| (h.trim().to_string(), i))
        .collect()
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn cell(record: &csv::StringRecord, col: Option<usize>) -> Option<&str> {
    col.and_then(|c| record.get(c)).map(str::trim).filter(|s| !s.is_empty())
}

fn number(record: &csv::StringRecord, col: usize, name: &str) -> Result<f64> {
    let line = line_of(record);
    let raw = cell(record, Some(col)).ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing value for `{name}`"),
    })?;
    let v: f64 = raw.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("`{name}` is not a number: `{raw}`"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            msg: format!("`{name}` is not finite"),
        });
    }
    Ok(v)
}

fn optional_number(record: &csv::StringRecord, col: Option<usize>, name: &str) -> Result<Option<f64>> {
    match cell(record, col) {
        None => Ok(None),
        Some(_) => number(record, col.unwrap(), name).map(Some),
    }
}

struct PendingTrip {
    samples: Vec<TelemetrySample>,
    first_line: u64,
}

/// Parses the long-format samples CSV and the per-trip labels CSV.
///
/// Trips appear in order of first occurrence in the samples stream. Label
/// rows for trip ids without samples are ignored.
pub fn parse_trip_csv<D: Read, L: Read>(data: D, labels: L) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(data);
    let cols = header_index(rdr.headers()?);
    let required = |name: &str| {
        cols.get(name).copied().ok_or_else(|| Error::Parse {
            line: 1,
            msg: format!("samples header lacks column `{name}`"),
        })
    };
    let trip_col = required("trip_id")?;
    let t_col = required("t")?;
    let core_cols: Vec<usize> = Channel::CORE
        .iter()
        .map(|c| required(c.name()))
        .collect::<Result<_>>()?;
    let extra_cols: Vec<Option<usize>> = Channel::EXTRAS.iter().map(|c| cols.get(c.name()).copied()).collect();

    let mut order: Vec<String> = Vec::new();
    let mut pending: HashMap<String, PendingTrip> = HashMap::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let trip_id = cell(&rec, Some(trip_col))
            .ok_or_else(|| Error::Parse {
                line,
                msg: "missing trip_id".into(),
            })?
            .to_string();
        let t = number(&rec, t_col, "t")?;
        let core: Vec<f64> = Channel::CORE
            .iter()
            .zip(&core_cols)
            .map(|(c, &col)| number(&rec, col, c.name()))
            .collect::<Result<_>>()?;
        let mut extras = [None; 4];
        for (slot, (c, col)) in extras.iter_mut().zip(Channel::EXTRAS.iter().zip(&extra_cols)) {
            *slot = optional_number(&rec, *col, c.name())?;
        }
        let sample = TelemetrySample {
            t,
            capacity_wh: core[0],
            soc_pct: core[1],
            energy_consumed_wh: core[2],
            energy_regen_wh: core[3],
            consumption_avg_mwh: core[4],
            soh_pct: extras[0],
            motor_power_w: extras[1],
            torque_nm: extras[2],
            rpm: extras[3],
        };
        sample.validate().map_err(|msg| Error::Parse { line, msg })?;

        let entry = pending.entry(trip_id.clone()).or_insert_with(|| {
            order.push(trip_id.clone());
            PendingTrip {
                samples: Vec::new(),
                first_line: line,
            }
        });
        if let Some(prev) = entry.samples.last() {
            if t == prev.t {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate (trip_id, t) = ({trip_id}, {t})"),
                });
            }
            if t < prev.t {
                return Err(Error::Parse {
                    line,
                    msg: format!("t = {t} precedes previous sample t = {} of trip `{trip_id}`", prev.t),
                });
            }
            if sample.energy_consumed_wh < prev.energy_consumed_wh || sample.energy_regen_wh < prev.energy_regen_wh {
                return Err(Error::Parse {
                    line,
                    msg: format!("cumulative energy decreases in trip `{trip_id}`"),
                });
            }
        }
        entry.samples.push(sample);
    }

    let mut labels_by_trip = parse_labels(labels)?;
    let mut trips = Vec::with_capacity(order.len());
    for id in order {
        let p = pending.remove(&id).expect("trip recorded in order");
        let labels = labels_by_trip.remove(&id).unwrap_or_default();
        let trip = Trip {
            trip_id: id,
            samples: p.samples,
            labels,
        };
        trip.validate().map_err(|e| Error::Parse {
            line: p.first_line,
            msg: e.to_string(),
        })?;
        trips.push(trip);
    }
    Dataset::new(trips)
}

fn parse_labels<L: Read>(labels: L) -> Result<HashMap<String, TripLabels>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(labels);
    let cols = header_index(rdr.headers()?);
    let trip_col = *cols.get("trip_id").ok_or_else(|| Error::Parse {
        line: 1,
        msg: "labels header lacks column `trip_id`".into(),
    })?;
    let col = |n: LabelName| cols.get(n.as_str()).copied();
    let mut out = HashMap::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let err = |msg: String| Error::Parse { line, msg };
        let trip_id = cell(&rec, Some(trip_col))
            .ok_or_else(|| err("missing trip_id".into()))?
            .to_string();
        let text = |n: LabelName| cell(&rec, col(n)).map(str::to_string);
        let style = cell(&rec, col(LabelName::Style))
            .map(str::parse)
            .transpose()
            .map_err(err)?;
        let occupancy = cell(&rec, col(LabelName::Occupancy))
            .map(|s| {
                s.parse::<u8>()
                    .map_err(|_| format!("occupancy `{s}` is not an integer"))
            })
            .transpose()
            .map_err(err)?;
        let aux_w = optional_number(&rec, col(LabelName::AuxW), "aux_w")?;
        let labels = TripLabels {
            driver: text(LabelName::Driver),
            vehicle: text(LabelName::Vehicle),
            style,
            occupancy,
            aux_w,
            origin: text(LabelName::Origin),
            destination: text(LabelName::Destination),
        };
        labels.validate().map_err(err)?;
        if out.insert(trip_id.clone(), labels).is_some() {
            return Err(err(format!("duplicate labels for trip `{trip_id}`")));
        }
    }
    Ok(out)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes the samples CSV. Extra columns are emitted only when some sample
/// carries them.
pub fn write_samples_csv<W: Write>(dataset: &Dataset, out: W) -> Result<()> {
    let extras: Vec<Channel> = Channel::EXTRAS
        .into_iter()
        .filter(|&c| {
            dataset
                .trips
                .iter()
                .any(|t| t.samples.iter().any(|s| s.get(c).is_some()))
        })
        .collect();
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["trip_id", "t"];
    header.extend(Channel::CORE.iter().map(|c| c.name()));
    header.extend(extras.iter().map(|c| c.name()));
    w.write_record(&header)?;
    let mut row: Vec<String> = Vec::with_capacity(header.len());
    for trip in &dataset.trips {
        for s in &trip.samples {
            row.clear();
            row.push(trip.trip_id.clone());
            row.push(s.t.to_string());
            for c in Channel::CORE {
                row.push(s.get(c).unwrap().to_string());
            }
            for &c in &extras {
                row.push(fmt_opt(s.get(c)));
            }
            w.write_record(&row)?;
        }
    }
    w.flush()
        .map_err(|e| Error::Invalid(format!("flushing samples CSV: {e}")))?;
    Ok(())
}

pub fn write_labels_csv<W: Write>(dataset: &Dataset, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["trip_id"];
    header.extend(LabelName::ALL.iter().map(|l| l.as_str()));
    w.write_record(&header)?;
    for trip in &dataset.trips {
        let mut row = vec![trip.trip_id.clone()];
        row.extend(LabelName::ALL.iter().map(|&l| trip.labels.get(l).unwrap_or_default()));
        w.write_record(&row)?;
    }
    w.flush()
        .map_err(|e| Error::Invalid(format!("flushing labels CSV: {e}")))?;
    Ok(())
}

/// Reads `samples.csv` and `labels.csv` from a directory.
pub fn read_dataset_dir(dir: &Path) -> Result<Dataset> {
    let open = |name: &str| {
        let p = dir.join(name);
        File::open(&p).map(BufReader::new).map_err(|e| Error::io(p, e))
    };
    parse_trip_csv(open(SAMPLES_FILE)?, open(LABELS_FILE)?)
}

/// Writes `samples.csv` and `labels.csv` into a directory, creating it.
pub fn write_dataset_dir(dataset: &Dataset, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let create = |name: &str| {
        let p = dir.join(name);
        File::create(&p).map(BufWriter::new).map_err(|e| Error::io(p, e))
    };
    write_samples_csv(dataset, create(SAMPLES_FILE)?)?;
    write_labels_csv(dataset, create(LABELS_FILE)?)
}
