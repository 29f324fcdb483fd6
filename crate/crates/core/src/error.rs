use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },

    #[error("invalid data: {0}")]
    Invalid(String),

    #[error("class `{class}` has {count} row(s); {needed} needed")]
    ClassTooSmall { class: String, count: usize, needed: usize },

    #[error("need at least two classes, found {0}")]
    SingleClass(usize),

    #[error("feature names differ from training: only in model {missing:?}, only in input {extra:?}")]
    FeatureMismatch { missing: Vec<String>, extra: Vec<String> },

    #[error("trips missing label `{label}`: {trips:?}")]
    MissingLabel { label: String, trips: Vec<String> },

    #[error("window size {0} leaves no samples")]
    EmptyAfterAggregation(usize),

    #[error("trip `{trip}` would deplete the battery ({needed_wh:.0} Wh needed, {capacity_wh:.0} Wh available); use a larger capacity")]
    BatteryDepleted {
        trip: String,
        needed_wh: f64,
        capacity_wh: f64,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
