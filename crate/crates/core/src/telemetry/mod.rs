//! Battery trace domain types, CSV ingestion and dataset splitting.

mod csv_io;
mod split;
mod types;

pub use csv_io::{parse_trip_csv, read_dataset_dir, write_dataset_dir, write_labels_csv, write_samples_csv};
pub use split::{split_train_test, stratified_partition, undersample_balance};
pub use types::{Channel, Dataset, LabelName, Style, TelemetrySample, Trip, TripLabels};
