//! Instantaneous rates of the static quantities with respect to τ, their
//! τ → 0 closed forms, and a finite-difference oracle for cross-checking the
//! analytic expressions.

use serde::Serialize;

use crate::dist::{LevelDistribution, ScaledTime};
use crate::error::{Error, Result};
use crate::info::{fidelity, info_gain, reversal_probability};
use crate::measurement::{null_probability, posterior_null};

const ENTROPY_FLOOR: f64 = 1e-300;

// Σ n p(x_n) e^{-nτ}
fn decay_weighted_mean_numerator(prior: &LevelDistribution, t: f64) -> f64 {
    prior
        .probs()
        .iter()
        .enumerate()
        .map(|(n, p)| n as f64 * p * (-(n as f64) * t).exp())
        .sum()
}

/// Rate of change of the null-record information gain,
/// İ(0,τ) = -Σ p(x_n|y₀) (n - ⟨n⟩_{y₀}) log₂ p(x_n|y₀).
pub fn rate_info_gain(prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    let post = posterior_null(prior, tau);
    let mean = post.mean_level();
    post.probs()
        .iter()
        .enumerate()
        .filter(|(_, &q)| q > ENTROPY_FLOOR)
        .map(|(n, &q)| -q * (n as f64 - mean) * q.log2())
        .sum()
}

/// Rate of change of the fidelity,
/// Ḟ(τ) = ½ [ F(τ) Σ n p(x_n) e^{-nτ} / p(y₀) - Σ n √(p(x_n) p(x_n|y₀)) ].
///
/// Non-positive for every valid prior and τ.
pub fn rate_fidelity(prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    let t = tau.value();
    let p_null = null_probability(prior, tau);
    let post = posterior_null(prior, tau);
    let overlap_mean: f64 = prior
        .probs()
        .iter()
        .zip(post.probs())
        .enumerate()
        .map(|(n, (p, q))| n as f64 * (p * q).sqrt())
        .sum();
    0.5 * (fidelity(prior, tau) * decay_weighted_mean_numerator(prior, t) / p_null - overlap_mean)
}

/// Rate of change of the reversal probability,
/// Ṗ_rev(τ) = P_rev(τ) [ Σ n p(x_n) e^{-nτ} / p(y₀) - N ].
///
/// Non-positive for every valid prior and τ.
pub fn rate_reversal(prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    let t = tau.value();
    let p_null = null_probability(prior, tau);
    reversal_probability(prior, tau)
        * (decay_weighted_mean_numerator(prior, t) / p_null - prior.max_level() as f64)
}

/// The three analytic rates at one τ.
#[derive(Debug, Clone, Serialize)]
pub struct RateSnapshot {
    pub tau: f64,
    pub d_info_gain: f64,
    pub d_fidelity: f64,
    pub d_p_rev: f64,
}

pub fn rate_snapshot(prior: &LevelDistribution, tau: ScaledTime) -> RateSnapshot {
    RateSnapshot {
        tau: tau.value(),
        d_info_gain: rate_info_gain(prior, tau),
        d_fidelity: rate_fidelity(prior, tau),
        d_p_rev: rate_reversal(prior, tau),
    }
}

/// Closed-form τ → 0 values of the three rates.
#[derive(Debug, Clone, Serialize)]
pub struct RateLimits {
    /// -Σ p(x_n) (n - ⟨n⟩) log₂ p(x_n)
    pub d_info_gain: f64,
    /// Always 0.
    pub d_fidelity: f64,
    /// ⟨n⟩ - N.
    pub d_p_rev: f64,
}

pub fn rate_limits(prior: &LevelDistribution) -> RateLimits {
    let mean = prior.mean_level();
    let d_info_gain = prior
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > ENTROPY_FLOOR)
        .map(|(n, &p)| -p * (n as f64 - mean) * p.log2())
        .sum();
    RateLimits {
        d_info_gain,
        d_fidelity: 0.0,
        d_p_rev: mean - prior.max_level() as f64,
    }
}

/// Which static quantity a finite difference should probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RateQuantity {
    InfoGain,
    Fidelity,
    ReversalProbability,
}

impl RateQuantity {
    pub fn eval(self, prior: &LevelDistribution, tau: ScaledTime) -> f64 {
        match self {
            RateQuantity::InfoGain => info_gain(prior, tau),
            RateQuantity::Fidelity => fidelity(prior, tau),
            RateQuantity::ReversalProbability => reversal_probability(prior, tau),
        }
    }

    /// The matching analytic rate.
    pub fn analytic_rate(self, prior: &LevelDistribution, tau: ScaledTime) -> f64 {
        match self {
            RateQuantity::InfoGain => rate_info_gain(prior, tau),
            RateQuantity::Fidelity => rate_fidelity(prior, tau),
            RateQuantity::ReversalProbability => rate_reversal(prior, tau),
        }
    }
}

/// Central difference [Q(τ+h) - Q(τ-h)] / 2h of a static quantity.
///
/// Requires `step > 0` and `tau - step ≥ 0`; picking a step small enough for
/// the local curvature is the caller's job.
pub fn finite_difference_oracle(
    quantity: RateQuantity,
    prior: &LevelDistribution,
    tau: ScaledTime,
    step: f64,
) -> Result<f64> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    let t = tau.value();
    if t - step < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "central difference at tau = {t} needs tau - step >= 0, got step = {step}"
        )));
    }
    let hi = quantity.eval(prior, ScaledTime::new(t + step)?);
    let lo = quantity.eval(prior, ScaledTime::new(t - step)?);
    Ok((hi - lo) / (2.0 * step))
}

/// Default numerical derivative: central difference with h = 1e-5, falling
/// back to a forward difference with h = 1e-6 where τ < h.
pub fn numerical_rate(quantity: RateQuantity, prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    const CENTRAL_STEP: f64 = 1e-5;
    const FORWARD_STEP: f64 = 1e-6;
    let t = tau.value();
    if t >= CENTRAL_STEP {
        finite_difference_oracle(quantity, prior, tau, CENTRAL_STEP)
            .expect("central step fits the domain")
    } else {
        let here = quantity.eval(prior, tau);
        let ahead = quantity.eval(
            prior,
            ScaledTime::new(t + FORWARD_STEP).expect("forward point is finite"),
        );
        (ahead - here) / FORWARD_STEP
    }
}
