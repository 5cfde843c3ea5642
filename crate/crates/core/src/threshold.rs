//! First-crossing times of the static quantities, found by a bracketing scan
//! followed by bisection.

use serde::{Deserialize, Serialize};

use crate::dist::{LevelDistribution, ScaledTime};
use crate::error::{Error, Result};
use crate::info::{
    fidelity, info_gain, mutual_information, relative_entropy, reversal_probability,
    shannon_entropy,
};
use crate::panels::{qubit_panels, qutrit_panels};

/// Coarse scan step ahead of bisection.
const SCAN_STEP: f64 = 1e-3;
/// Bisection stops once the bracket is this narrow.
const BISECT_TOL: f64 = 1e-10;

/// Static quantity a threshold search runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdQuantity {
    InfoGain,
    MutualInfo,
    Fidelity,
    ReversalProbability,
    RelEntropy,
}

impl ThresholdQuantity {
    fn eval(self, prior: &LevelDistribution, tau: ScaledTime) -> f64 {
        match self {
            ThresholdQuantity::InfoGain => info_gain(prior, tau),
            ThresholdQuantity::MutualInfo => mutual_information(prior, tau),
            ThresholdQuantity::Fidelity => fidelity(prior, tau),
            ThresholdQuantity::ReversalProbability => reversal_probability(prior, tau),
            ThresholdQuantity::RelEntropy => relative_entropy(prior, tau),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Below,
    Above,
}

/// Outcome of a threshold search over a finite window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Crossing {
    Reached(f64),
    NotReached,
}

impl Crossing {
    pub fn reached(self) -> Option<f64> {
        match self {
            Crossing::Reached(tau) => Some(tau),
            Crossing::NotReached => None,
        }
    }
}

/// Which saturation value "90% of the maximum information gain" refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IMaxMode {
    /// I_max = I(0, τ_max), the largest value inside the search window.
    #[default]
    Window,
    /// I_max = H(X), the τ → ∞ limit for priors with ground-level weight.
    Asymptotic,
}

impl std::fmt::Display for IMaxMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IMaxMode::Window => write!(f, "window"),
            IMaxMode::Asymptotic => write!(f, "asymptotic"),
        }
    }
}

/// First τ in (0, τ_max] where the quantity strictly passes `target` in the
/// given direction, located to within 1e-10.
///
/// Touching the target without crossing reports nothing; a quantity that
/// never passes it yields `Crossing::NotReached`.
pub fn find_threshold(
    quantity: ThresholdQuantity,
    prior: &LevelDistribution,
    target: f64,
    direction: Direction,
    tau_max: ScaledTime,
) -> Result<Crossing> {
    if !target.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "threshold target must be finite, got {target}"
        )));
    }
    if tau_max.value() <= 0.0 {
        return Err(Error::InvalidArgument(
            "search window must have positive length".into(),
        ));
    }
    find_crossing(
        |tau| quantity.eval(prior, ScaledTime::new(tau).expect("scan point is valid")),
        target,
        direction,
        tau_max.value(),
    )
}

fn crossed(value: f64, target: f64, direction: Direction) -> bool {
    match direction {
        Direction::Below => value < target,
        Direction::Above => value > target,
    }
}

fn find_crossing(
    eval: impl Fn(f64) -> f64,
    target: f64,
    direction: Direction,
    tau_max: f64,
) -> Result<Crossing> {
    if crossed(eval(0.0), target, direction) {
        return Err(Error::InvalidArgument(format!(
            "quantity already passes target {target} at tau = 0; no crossing to find"
        )));
    }
    let steps = (tau_max / SCAN_STEP).ceil() as u64;
    let mut prev = 0.0;
    for k in 1..=steps {
        let tau = (k as f64 * SCAN_STEP).min(tau_max);
        if crossed(eval(tau), target, direction) {
            let (mut lo, mut hi) = (prev, tau);
            while hi - lo > BISECT_TOL {
                let mid = 0.5 * (lo + hi);
                if crossed(eval(mid), target, direction) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(Crossing::Reached(0.5 * (lo + hi)));
        }
        prev = tau;
    }
    Ok(Crossing::NotReached)
}

/// First τ where I(0,τ) exceeds `fraction` of its maximum, with the maximum
/// read either at the window end or from the asymptotic limit.
pub fn info_gain_threshold(
    prior: &LevelDistribution,
    fraction: f64,
    mode: IMaxMode,
    tau_max: ScaledTime,
) -> Result<Crossing> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "fraction must lie in (0, 1), got {fraction}"
        )));
    }
    if tau_max.value() <= 0.0 {
        return Err(Error::InvalidArgument(
            "search window must have positive length".into(),
        ));
    }
    let i_max = match mode {
        IMaxMode::Window => info_gain(prior, tau_max),
        IMaxMode::Asymptotic => shannon_entropy(prior),
    };
    if i_max <= 0.0 {
        return Err(Error::DegenerateInfoGain { i_max });
    }
    find_threshold(
        ThresholdQuantity::InfoGain,
        prior,
        fraction * i_max,
        Direction::Above,
        tau_max,
    )
}

/// Crossing times of the three tabulated thresholds for one prior.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub prior: LevelDistribution,
    /// First τ with F < 0.9.
    pub tau_fidelity_90: Crossing,
    /// First τ with P_rev < 0.5.
    pub tau_prev_50: Crossing,
    /// First τ with I(0) > 0.9 I_max.
    pub tau_info_90: Crossing,
    pub i_max_mode: IMaxMode,
    pub tau_max: f64,
}

pub fn threshold_report(
    prior: &LevelDistribution,
    mode: IMaxMode,
    tau_max: ScaledTime,
) -> Result<ThresholdReport> {
    Ok(ThresholdReport {
        prior: prior.clone(),
        tau_fidelity_90: find_threshold(
            ThresholdQuantity::Fidelity,
            prior,
            0.9,
            Direction::Below,
            tau_max,
        )?,
        tau_prev_50: find_threshold(
            ThresholdQuantity::ReversalProbability,
            prior,
            0.5,
            Direction::Below,
            tau_max,
        )?,
        tau_info_90: info_gain_threshold(prior, 0.9, mode, tau_max)?,
        i_max_mode: mode,
        tau_max: tau_max.value(),
    })
}

/// Threshold reports for the built-in qubit and qutrit panels over the
/// default window τ ∈ (0, 5].
pub fn reproduce_tables() -> (Vec<ThresholdReport>, Vec<ThresholdReport>) {
    let tau_max = ScaledTime::new(5.0).expect("default window is valid");
    let run = |panels: [LevelDistribution; 4]| {
        panels
            .iter()
            .map(|prior| {
                threshold_report(prior, IMaxMode::Window, tau_max)
                    .expect("panel priors are non-degenerate")
            })
            .collect()
    };
    (run(qubit_panels()), run(qutrit_panels()))
}
