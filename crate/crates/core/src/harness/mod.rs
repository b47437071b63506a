//! Seeded Monte-Carlo experiments compared against the theory.
//!
//! Trial `i` of an experiment draws everything from a seed derived from the
//! master seed and `i` alone, and trials are aggregated as integer counts, so
//! results do not depend on thread count or scheduling.

pub mod compare;
pub mod dsr_run;
pub mod predict;
pub mod run;
pub mod spec;
pub mod stats;
pub mod table;

pub use compare::{compare, score_z, CompareOptions, CompareReport, RowCheck};
pub use dsr_run::{run_dsr, DsrSpec};
pub use predict::{Prediction, Predictor};
pub use run::{run_sweep, run_trials, Counts, Experiment, SweepResult, SweepRow};
pub use spec::{Axis, ExperimentSpec, Field, Lookbacks, SweepGrid};
pub use stats::{lag1_autocorrelation, two_proportion, wilson, Z95};
pub use table::{to_csv, to_json};
