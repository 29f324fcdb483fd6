//! Mean aggregation over non-overlapping time windows, and the sweep that
//! measures how much it degrades the per-sample attacks.

mod aggregate;
mod reduce;
mod sweep;

pub use aggregate::{aggregate_dataset, aggregate_trip};
pub use reduce::stratified_reduce;
pub use sweep::{sweep, SweepResult, SweepRow, DEFAULT_SIZES};
