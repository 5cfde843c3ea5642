//! Information dynamics of null-result weak measurements on finite
//! photon-number distributions.
//!
//! A detector watches a decaying mode over a dimensionless duration τ = 2γt
//! and registers nothing. Conditioning on that null record reweights the
//! photon-number distribution level by level with the survival factor
//! `e^{-nτ}`. This crate evaluates what that update does to the usual
//! information bookkeeping:
//!
//! - [`measurement`]: the conditional update itself and the binary
//!   null/click outcome ensemble;
//! - [`info`]: Shannon entropy, information gain, mutual information,
//!   Bhattacharyya fidelity, reversal probability, and relative entropy at a
//!   given τ;
//! - [`rates`]: analytic d/dτ expressions for information gain, fidelity,
//!   and reversal probability, their τ → 0 closed forms, and a
//!   finite-difference oracle to check them against;
//! - [`threshold`]: first-crossing times (fidelity below 90%, reversal
//!   probability below 50%, information gain above 90% of its maximum)
//!   found by bracketing and bisection;
//! - [`mc`]: trajectory Monte Carlo with splittable per-trajectory random
//!   streams, validating the analytic model statistically;
//! - [`panels`]: the built-in qubit and qutrit panel priors used by the
//!   bundled datasets and tables.
//!
//! All quantities are classical functionals of the level probabilities
//! |c_n|²; amplitude phases never enter.

pub mod dist;
pub mod error;
pub mod info;
pub mod mc;
pub mod measurement;
pub mod panels;
pub mod rates;
pub mod threshold;

pub use dist::{LevelDistribution, ScaledTime};
pub use error::{Error, Result};
pub use info::{
    fidelity, info_gain, info_snapshot, mutual_information, relative_entropy,
    reversal_probability, shannon_entropy, InfoSnapshot,
};
pub use mc::{
    mc_validate, run_mc, total_variation, McConfig, McEstimate, McValidation, TolerancePolicy,
};
pub use measurement::{
    null_probability, outcome_ensemble, posterior_click, posterior_null, OutcomeEnsemble,
};
pub use rates::{
    finite_difference_oracle, numerical_rate, rate_fidelity, rate_info_gain, rate_limits,
    rate_reversal, rate_snapshot, RateLimits, RateQuantity, RateSnapshot,
};
pub use threshold::{
    find_threshold, info_gain_threshold, reproduce_tables, threshold_report, Crossing, Direction,
    IMaxMode, ThresholdQuantity, ThresholdReport,
};
