//! Static information-theoretic quantities of the null-result update.
//!
//! All entropies and divergences are in bits. Conventions: 0·log₂0 = 0 and
//! 0·log₂(0/0) = 0; probabilities below 1e-300 are treated as exact zeros
//! inside entropy sums so underflowed tails cannot inject spurious terms.

use serde::Serialize;

use crate::dist::{LevelDistribution, ScaledTime};
use crate::measurement::{null_probability, outcome_ensemble, posterior_null};

/// Below this a probability is treated as zero inside entropy sums.
const ENTROPY_FLOOR: f64 = 1e-300;

pub(crate) fn entropy_bits_of(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > ENTROPY_FLOOR)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Shannon entropy H(X) = -Σ p(x_n) log₂ p(x_n).
pub fn shannon_entropy(dist: &LevelDistribution) -> f64 {
    entropy_bits_of(dist.probs())
}

/// Entropy of the null-conditioned posterior, H(X|y₀).
pub fn conditional_entropy_null(prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    entropy_bits_of(posterior_null(prior, tau).probs())
}

/// Information gain of the null record, I(0) = H(X) - H(X|y₀).
///
/// Unaveraged, so it may be negative: conditioning on no click can leave the
/// distribution more uncertain than the prior.
pub fn info_gain(prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    shannon_entropy(prior) - conditional_entropy_null(prior, tau)
}

/// Mutual information I(X:Y) between the level and the binary detector
/// record, Σ_k p(y_k) I(k) = H(X) - Σ_k p(y_k) H(X|y_k).
///
/// Defined as 0 at τ = 0, where the click record has probability zero.
/// Clamped at 0 against last-ulp rounding; the true value is non-negative.
pub fn mutual_information(prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    let ens = outcome_ensemble(prior, tau);
    let mut conditional = ens.p_null * entropy_bits_of(ens.posterior_null.probs());
    if let Some(click) = &ens.posterior_click {
        conditional += ens.p_click * entropy_bits_of(click.probs());
    }
    (shannon_entropy(prior) - conditional).max(0.0)
}

/// Bhattacharyya overlap between prior and null posterior,
/// F(τ) = Σ √(p(x_n) p(x_n|y₀)) = Σ p(x_n) e^{-nτ/2} / √p(y₀).
pub fn fidelity(prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    let t = tau.value();
    let overlap: f64 = prior
        .probs()
        .iter()
        .enumerate()
        .map(|(n, p)| p * (-(n as f64) * t / 2.0).exp())
        .sum();
    (overlap / null_probability(prior, tau).sqrt()).min(1.0)
}

/// Success probability of undoing the null back-action with a second weak
/// measurement, P_rev(τ) = e^{-Nτ} / p(y₀).
///
/// N is the declared truncation of the space (vector length minus one), even
/// if the top entry is zero.
pub fn reversal_probability(prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    let t = tau.value();
    let n_max = prior.max_level() as f64;
    ((-n_max * t).exp() / null_probability(prior, tau)).min(1.0)
}

/// Relative entropy from the null posterior to the prior,
/// D(p(x|y₀) ‖ p(x)) = Σ p(x_n|y₀) log₂ [p(x_n|y₀)/p(x_n)].
///
/// The posterior support is contained in the prior support, so no term
/// divides by zero; 0/0 levels contribute nothing. Clamped at 0 against
/// last-ulp rounding.
pub fn relative_entropy(prior: &LevelDistribution, tau: ScaledTime) -> f64 {
    let post = posterior_null(prior, tau);
    let sum: f64 = post
        .probs()
        .iter()
        .zip(prior.probs())
        .filter(|(&q, &p)| q > ENTROPY_FLOOR && p > 0.0)
        .map(|(&q, &p)| q * (q / p).log2())
        .sum();
    sum.max(0.0)
}

/// Every static quantity evaluated at one τ.
#[derive(Debug, Clone, Serialize)]
pub struct InfoSnapshot {
    pub tau: f64,
    pub p_null: f64,
    pub entropy_prior: f64,
    pub entropy_posterior_null: f64,
    pub info_gain: f64,
    pub mutual_info: f64,
    pub fidelity: f64,
    pub p_rev: f64,
    pub rel_entropy: f64,
}

/// Evaluate all static quantities at one τ.
pub fn info_snapshot(prior: &LevelDistribution, tau: ScaledTime) -> InfoSnapshot {
    let entropy_prior = shannon_entropy(prior);
    let entropy_posterior_null = conditional_entropy_null(prior, tau);
    InfoSnapshot {
        tau: tau.value(),
        p_null: null_probability(prior, tau),
        entropy_prior,
        entropy_posterior_null,
        info_gain: entropy_prior - entropy_posterior_null,
        mutual_info: mutual_information(prior, tau),
        fidelity: fidelity(prior, tau),
        p_rev: reversal_probability(prior, tau),
        rel_entropy: relative_entropy(prior, tau),
    }
}
