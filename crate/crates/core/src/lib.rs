//! Battery side-channel inference on electric-vehicle consumption traces.
//!
//! The crate is organised as a pipeline:
//!
//! * [`telemetry`] trace types, CSV ingestion, splitting and balancing.
//! * [`featurex`] windowing, the time-series feature catalog and the
//!   fit-on-train preprocessing steps.
//! * [`learners`] decision tree, random forest, k-nearest neighbours and a
//!   one-hidden-layer perceptron, plus grid search and evaluation metrics.
//! * [`attacks`] the seven inference objectives wired end to end.
//! * [`shield`] the mean-aggregation countermeasure and its sweep.
//! * [`synthgen`] a seeded generator of labelled battery traces.
//! * [`cli`] the `voltspy` command-line front end.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled and falls back to sequential iteration
//! otherwise. Results are identical either way.

pub mod attacks;
pub mod cli;
pub mod error;
pub mod featurex;
pub mod learners;
pub mod par;
pub mod rng;
pub mod shield;
pub mod synthgen;
pub mod telemetry;

pub use error::{Error, Result};
