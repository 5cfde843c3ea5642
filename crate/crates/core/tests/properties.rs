//! Property tests for the conditioning identities, invariant signs and
//! bounds, and finite-difference agreement of the analytic rates.

use proptest::prelude::*;

use nullmeas::rates::numerical_rate;
use nullmeas::{
    fidelity, find_threshold, info_gain, mutual_information, null_probability, outcome_ensemble,
    posterior_null, rate_fidelity, rate_reversal, relative_entropy, reversal_probability,
    shannon_entropy, Crossing, Direction, LevelDistribution, RateQuantity, ScaledTime,
    ThresholdQuantity,
};

fn tau(t: f64) -> ScaledTime {
    ScaledTime::new(t).unwrap()
}

/// Random valid priors with 2 to 8 levels, occasionally with zeroed entries.
fn arb_prior() -> impl Strategy<Value = LevelDistribution> {
    (2usize..=8)
        .prop_flat_map(|len| {
            (
                proptest::collection::vec(0.01..1.0f64, len),
                proptest::collection::vec(proptest::bool::weighted(0.2), len),
            )
        })
        .prop_filter_map("needs two occupied levels", |(mut weights, zero_mask)| {
            for (w, &z) in weights.iter_mut().zip(&zero_mask) {
                if z {
                    *w = 0.0;
                }
            }
            if weights.iter().filter(|&&w| w > 0.0).count() < 2 {
                return None;
            }
            let sum: f64 = weights.iter().sum();
            LevelDistribution::new(weights.iter().map(|w| w / sum).collect()).ok()
        })
}

proptest! {
    #[test]
    fn posteriors_stay_normalized(prior in arb_prior(), t in 0.0..50.0f64) {
        let ens = outcome_ensemble(&prior, tau(t));
        let null_sum: f64 = ens.posterior_null.probs().iter().sum();
        prop_assert!((null_sum - 1.0).abs() < 1e-12);
        if let Some(click) = ens.posterior_click {
            let click_sum: f64 = click.probs().iter().sum();
            prop_assert!((click_sum - 1.0).abs() < 1e-12);
            prop_assert_eq!(click.probs()[0], 0.0);
        }
        prop_assert!((ens.p_null + ens.p_click - 1.0).abs() < 1e-12);
    }

    #[test]
    fn successive_null_updates_compose_additively(
        prior in arb_prior(),
        t1 in 0.0..5.0f64,
        t2 in 0.0..5.0f64,
    ) {
        let stepwise = posterior_null(&posterior_null(&prior, tau(t1)), tau(t2));
        let combined = posterior_null(&prior, tau(t1 + t2));
        for (a, b) in stepwise.probs().iter().zip(combined.probs()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn null_probability_obeys_the_chain_rule(
        prior in arb_prior(),
        t1 in 0.0..5.0f64,
        t2 in 0.0..5.0f64,
    ) {
        let whole = null_probability(&prior, tau(t1 + t2));
        let chained = null_probability(&prior, tau(t1))
            * null_probability(&posterior_null(&prior, tau(t1)), tau(t2));
        prop_assert!((whole - chained).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_bayes_identity(prior in arb_prior(), t in 0.0..50.0f64) {
        let p_null = null_probability(&prior, tau(t));
        let post = posterior_null(&prior, tau(t));
        for (n, (&q, &p)) in post.probs().iter().zip(prior.probs()).enumerate() {
            prop_assert!((q * p_null - p * (-(n as f64) * t).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn posterior_mean_is_non_increasing(
        prior in arb_prior(),
        t1 in 0.0..20.0f64,
        t2 in 0.0..20.0f64,
    ) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let mean_lo = posterior_null(&prior, tau(lo)).mean_level();
        let mean_hi = posterior_null(&prior, tau(hi)).mean_level();
        prop_assert!(mean_hi <= mean_lo + 1e-12);
    }

    #[test]
    fn averaged_quantities_are_non_negative(prior in arb_prior(), t in 0.0..50.0f64) {
        prop_assert!(mutual_information(&prior, tau(t)) >= 0.0);
        prop_assert!(relative_entropy(&prior, tau(t)) >= 0.0);
    }

    #[test]
    fn mutual_information_is_bounded_by_prior_entropy(
        prior in arb_prior(),
        t in 0.0..50.0f64,
    ) {
        prop_assert!(mutual_information(&prior, tau(t)) <= shannon_entropy(&prior) + 1e-12);
    }

    #[test]
    fn fidelity_and_reversal_bounds(prior in arb_prior(), t in 0.0..50.0f64) {
        let f = fidelity(&prior, tau(t));
        let p = reversal_probability(&prior, tau(t));
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!(f * f * null_probability(&prior, tau(t)) <= 1.0 + 1e-12);
    }

    #[test]
    fn fidelity_and_reversal_are_non_increasing(
        prior in arb_prior(),
        t1 in 0.0..20.0f64,
        t2 in 0.0..20.0f64,
    ) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        prop_assert!(fidelity(&prior, tau(hi)) <= fidelity(&prior, tau(lo)) + 1e-12);
        prop_assert!(
            reversal_probability(&prior, tau(hi))
                <= reversal_probability(&prior, tau(lo)) + 1e-12
        );
    }

    #[test]
    fn uniform_priors_equate_relative_entropy_and_info_gain(
        levels in 2usize..=8,
        t in 0.0..10.0f64,
    ) {
        let prior = LevelDistribution::uniform(levels).unwrap();
        let d = relative_entropy(&prior, tau(t));
        let g = info_gain(&prior, tau(t));
        prop_assert!((d - g).abs() < 1e-12);
    }

    #[test]
    fn rate_signs_stay_non_positive(prior in arb_prior(), t in 0.0..20.0f64) {
        prop_assert!(rate_fidelity(&prior, tau(t)) <= 1e-12);
        prop_assert!(rate_reversal(&prior, tau(t)) <= 1e-12);
    }

    #[test]
    fn analytic_rates_match_the_numerical_derivative(
        prior in arb_prior(),
        t in 0.01..5.0f64,
    ) {
        for quantity in [
            RateQuantity::InfoGain,
            RateQuantity::Fidelity,
            RateQuantity::ReversalProbability,
        ] {
            let analytic = quantity.analytic_rate(&prior, tau(t));
            let numeric = numerical_rate(quantity, &prior, tau(t));
            let err = (analytic - numeric).abs();
            prop_assert!(
                err <= 1e-9_f64.max(1e-5 * numeric.abs()),
                "{quantity:?} at tau={t}: analytic={analytic}, numeric={numeric}"
            );
        }
    }

    #[test]
    fn reported_crossings_sit_on_their_targets(
        prior in arb_prior(),
        target in 0.55..0.95f64,
    ) {
        // reversal probability starts at 1 and decays monotonically, so any
        // target in (P_rev(τ_max), 1) has a crossing in the window
        let window = tau(20.0);
        let floor = reversal_probability(&prior, window);
        prop_assume!(floor < target - 1e-3);
        match find_threshold(
            ThresholdQuantity::ReversalProbability,
            &prior,
            target,
            Direction::Below,
            window,
        )
        .unwrap()
        {
            Crossing::Reached(t_star) => {
                let value = reversal_probability(&prior, tau(t_star));
                prop_assert!((value - target).abs() <= 1e-8);
            }
            Crossing::NotReached => prop_assert!(false, "crossing must exist"),
        }
    }
}
