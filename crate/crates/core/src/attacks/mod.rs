//! End-to-end inference attacks: one pipeline per objective, from trips
//! to a scored classifier.

mod importance;
mod output;
mod pipeline;
mod spec;

pub use importance::permutation_importance;
pub use output::{result_file_name, write_results, write_summary, RESULTS_DIR, SUMMARY_FILE};
pub use pipeline::{
    extract, prepare, prepare_matrix, run_attack, run_attack_detailed, AttackOptions, AttackResult, AttackRun,
    Fingerprint, PreparedAttack, DEFAULT_MAX_ROWS, TRAIN_RATIO,
};
pub use spec::{canonical_spec, AttackSpec, Flow, Objective, DEFAULT_REGION_FRACTION, DRIVER_WINDOW, REGION_WINDOW};

#[cfg(test)]
mod tests;
