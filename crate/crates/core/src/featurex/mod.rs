//! Windowing, the time-series feature catalog, and the fit-on-train
//! preprocessing steps (imputation, selection, standardization).

mod catalog;
mod flows;
mod impute;
mod matrix;
mod select;
mod standardize;
mod window;

pub use catalog::{
    catalog_names, extract_window_features, FeatureVector, CATALOG, DFT_COEFFICIENTS, FEATURES_PER_CHANNEL,
};
pub use flows::{catalog_matrix, extract_per_sample, per_sample_matrix};
pub use impute::{impute_fit_apply, Imputer};
pub use matrix::{sort_class_names, FeatureMatrix, MatrixBuilder};
pub use select::{anova_p_values, select_features, FeatureSelector};
pub use standardize::{standardize_fit_apply, Standardizer};
pub use window::{segment, segment_ranges, WindowSpec};
