//! Analytical retrieval theory: SNR formulas, accuracy integrals and their
//! approximations, the nonlinear-network distribution tracker, information
//! and capacity, collisions, and buffer time constants.

pub mod accuracy;
pub mod collision;
pub mod info;
pub mod normal;
pub mod snr;
pub mod time_constant;
pub mod tracker;

pub use accuracy::{
    accuracy_approx, accuracy_closed_d2, accuracy_model, accuracy_numeric, accuracy_plate, all_correct_probability,
    invert_accuracy, required_snr_squared, AllCorrectConvention, Approximation, Quadrature, ScoreModel, SnrRule,
};
pub use collision::{collision_accuracy, collision_info, CollisionCount, CollisionInfo};
pub use info::{capacity_search, info_curve, item_info, total_info, CapacityResult, InfoCurve, Objective, TailRule};
pub use snr::{score_model, snr, CodeMoments, LinearTerms, SnrScenario};
pub use time_constant::{matched_contraction, storage_bits, time_constant, uniform_variance, TimeConstant};
pub use tracker::{
    filled_curve, nonlinear_snr, tracker_init, tracker_moments, tracker_step, DistributionTracker, NonlinearSnr,
    NonlinearSpec, Start, StepKind, TrackerMode,
};
