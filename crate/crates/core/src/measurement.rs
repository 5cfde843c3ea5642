//! Null-result conditioning of a photon-number distribution.
//!
//! A detector watching for decay over a scaled duration τ leaves level `n`
//! undetected with probability `e^{-nτ}`. Conditioning on the null record
//! reweights the prior by that survival factor; the complementary "click by
//! τ" record reweights by `1 - e^{-nτ}`.

use serde::Serialize;

use crate::dist::{LevelDistribution, ScaledTime};
use crate::error::{Error, Result};

/// Probability of observing no click up to τ: Σ p(x_n) e^{-nτ}.
///
/// Strictly positive for any valid prior and clamped to at most 1 to absorb
/// last-ulp rounding of the prior sum.
pub fn null_probability(prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    let t = tau.value();
    let sum: f64 = prior
        .probs()
        .iter()
        .enumerate()
        .map(|(n, p)| p * (-(n as f64) * t).exp())
        .sum();
    sum.min(1.0)
}

/// Posterior over levels given the null record: p(x_n) e^{-nτ} / p(y₀).
///
/// The survival weights are factored against the lowest occupied level, so
/// the update stays well-defined even where `e^{-nτ}` underflows for every
/// occupied `n`.
pub fn posterior_null(prior: &LevelDistribution, tau: ScaledTime) -> LevelDistribution {
    let t = tau.value();
    let base = prior.lowest_occupied() as f64;
    let weights: Vec<f64> = prior
        .probs()
        .iter()
        .enumerate()
        .map(|(n, p)| {
            if *p == 0.0 {
                0.0
            } else {
                p * (-(n as f64 - base) * t).exp()
            }
        })
        .collect();
    let norm: f64 = weights.iter().sum();
    LevelDistribution::new(weights.into_iter().map(|w| w / norm).collect())
        .expect("null posterior of a valid prior is valid")
}

/// Posterior over levels given a click by τ: p(x_n)(1 - e^{-nτ}) / p(y₁).
///
/// Fails when the click record has probability zero, i.e. τ = 0 or the prior
/// puts no weight above level 0.
pub fn posterior_click(prior: &LevelDistribution, tau: ScaledTime) -> Result<LevelDistribution> {
    let t = tau.value();
    let weights = click_weights(prior, t);
    let norm: f64 = weights.iter().sum();
    if t == 0.0 || norm <= 0.0 {
        return Err(Error::DegenerateClick { tau: t });
    }
    Ok(
        LevelDistribution::new(weights.into_iter().map(|w| w / norm).collect())
            .expect("click posterior of a valid prior is valid"),
    )
}

// 1 - e^{-nτ} through expm1, exact zero at n = 0 and accurate at small τ.
fn click_weights(prior: &LevelDistribution, t: f64) -> Vec<f64> {
    prior
        .probs()
        .iter()
        .enumerate()
        .map(|(n, p)| p * -(-(n as f64) * t).exp_m1())
        .collect()
}

/// Both measurement branches at one τ.
#[derive(Debug, Clone, Serialize)]
pub struct OutcomeEnsemble {
    pub p_null: f64,
    pub p_click: f64,
    pub posterior_null: LevelDistribution,
    /// Absent whenever the click record has probability zero.
    pub posterior_click: Option<LevelDistribution>,
}

/// Bundle the null and click branches with their record probabilities.
pub fn outcome_ensemble(prior: &LevelDistribution, tau: ScaledTime) -> OutcomeEnsemble {
    let t = tau.value();
    if t == 0.0 {
        return OutcomeEnsemble {
            p_null: 1.0,
            p_click: 0.0,
            posterior_null: prior.clone(),
            posterior_click: None,
        };
    }
    let p_null = null_probability(prior, tau);
    let weights = click_weights(prior, t);
    let p_click: f64 = weights.iter().sum();
    let posterior_click = if p_click > 0.0 {
        Some(
            LevelDistribution::new(weights.into_iter().map(|w| w / p_click).collect())
                .expect("click posterior of a valid prior is valid"),
        )
    } else {
        None
    };
    OutcomeEnsemble {
        p_null,
        p_click,
        posterior_null: posterior_null(prior, tau),
        posterior_click,
    }
}
