//! Monte Carlo validation of the analytic model.
//!
//! Each trajectory draws a level from the prior and then a null/click record
//! with the per-level survival probability `e^{-nτ}`. Every trajectory's
//! randomness is derived purely from `(seed, trajectory index)` with a
//! splitmix-style counter generator, so estimates are bit-identical for a
//! fixed seed no matter how trajectories are split across workers.

use serde::{Deserialize, Serialize};

use crate::dist::{LevelDistribution, ScaledTime};
use crate::error::{Error, Result};
use crate::info::{entropy_bits_of, shannon_entropy};
use crate::measurement::{null_probability, posterior_null};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Splitmix64 counter generator.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Stream for one trajectory, a pure function of `(seed, index)`.
    fn for_trajectory(seed: u64, index: u64) -> Self {
        Self {
            state: mix64(seed ^ mix64(index.wrapping_mul(GOLDEN).wrapping_add(1))),
        }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform draw in [0, 1).
    fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }
}

/// A trajectory-sampling run: prior, duration, sample budget, seed, and the
/// number of workers the budget is split across.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub prior: LevelDistribution,
    pub tau: ScaledTime,
    pub samples: u64,
    pub seed: u64,
    pub workers: u64,
}

impl McConfig {
    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Frequencies over the null-conditioned trajectories; absent when no
/// trajectory survived conditioning.
#[derive(Debug, Clone, Serialize)]
pub struct McConditioned {
    pub posterior_null_hat: LevelDistribution,
    /// Multinomial standard error per level.
    pub posterior_se: Vec<f64>,
    /// Plug-in estimate of the information gain from the empirical
    /// distributions.
    pub info_gain_hat: f64,
}

/// Empirical counterparts of the null probability and null posterior.
#[derive(Debug, Clone, Serialize)]
pub struct McEstimate {
    pub p_null_hat: f64,
    pub p_null_se: f64,
    pub n_null: u64,
    pub samples: u64,
    pub conditioned: Option<McConditioned>,
}

#[derive(Default, Clone)]
struct Counts {
    null: u64,
    by_level_all: Vec<u64>,
    by_level_null: Vec<u64>,
}

impl Counts {
    fn new(levels: usize) -> Self {
        Self {
            null: 0,
            by_level_all: vec![0; levels],
            by_level_null: vec![0; levels],
        }
    }

    fn absorb(&mut self, other: &Counts) {
        self.null += other.null;
        for (a, b) in self.by_level_all.iter_mut().zip(&other.by_level_all) {
            *a += b;
        }
        for (a, b) in self.by_level_null.iter_mut().zip(&other.by_level_null) {
            *a += b;
        }
    }
}

fn simulate_range(
    seed: u64,
    range: std::ops::Range<u64>,
    cdf: &[f64],
    survival: &[f64],
) -> Counts {
    let mut counts = Counts::new(cdf.len());
    for index in range {
        let mut rng = SplitMix64::for_trajectory(seed, index);
        let u_level = rng.next_f64();
        let level = cdf
            .iter()
            .position(|&c| u_level < c)
            .unwrap_or(cdf.len() - 1);
        counts.by_level_all[level] += 1;
        if rng.next_f64() < survival[level] {
            counts.null += 1;
            counts.by_level_null[level] += 1;
        }
    }
    counts
}

/// Run the trajectory ensemble and return frequency estimates.
pub fn run_mc(config: &McConfig) -> Result<McEstimate> {
    config.validate()?;
    let t = config.tau.value();
    let cdf: Vec<f64> = config
        .prior
        .probs()
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let survival: Vec<f64> = (0..config.prior.levels())
        .map(|n| (-(n as f64) * t).exp())
        .collect();

    let workers = config.workers.min(config.samples);
    let chunk = config.samples.div_ceil(workers);
    let mut total = Counts::new(config.prior.levels());
    if workers == 1 {
        total = simulate_range(config.seed, 0..config.samples, &cdf, &survival);
    } else {
        let partials = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let (cdf, survival) = (&cdf, &survival);
                    let start = w * chunk;
                    let end = ((w + 1) * chunk).min(config.samples);
                    scope.spawn(move || simulate_range(config.seed, start..end, cdf, survival))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect::<Vec<_>>()
        });
        for partial in &partials {
            total.absorb(partial);
        }
    }

    let samples = config.samples as f64;
    let p_null_hat = total.null as f64 / samples;
    let p_null_se = (p_null_hat * (1.0 - p_null_hat) / samples).sqrt();
    let conditioned = if total.null > 0 {
        let n_null = total.null as f64;
        let freqs: Vec<f64> = total
            .by_level_null
            .iter()
            .map(|&c| c as f64 / n_null)
            .collect();
        let posterior_se = freqs.iter().map(|&q| (q * (1.0 - q) / n_null).sqrt()).collect();
        let all_freqs: Vec<f64> = total
            .by_level_all
            .iter()
            .map(|&c| c as f64 / samples)
            .collect();
        let info_gain_hat = entropy_bits_of(&all_freqs) - entropy_bits_of(&freqs);
        Some(McConditioned {
            posterior_null_hat: LevelDistribution::new(freqs)
                .expect("frequencies over null trajectories form a distribution"),
            posterior_se,
            info_gain_hat,
        })
    } else {
        None
    };

    Ok(McEstimate {
        p_null_hat,
        p_null_se,
        n_null: total.null,
        samples: config.samples,
        conditioned,
    })
}

/// Deviations are accepted up to this multiple of their standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub sigma: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self { sigma: 4.0 }
    }
}

/// One estimate compared against its analytic value.
#[derive(Debug, Clone, Serialize)]
pub struct QuantityCheck {
    pub name: String,
    pub estimate: f64,
    pub analytic: f64,
    pub std_error: f64,
    pub pass: bool,
}

/// Outcome of comparing a Monte Carlo run against the analytic model.
#[derive(Debug, Clone, Serialize)]
pub struct McValidation {
    pub estimate: McEstimate,
    pub checks: Vec<QuantityCheck>,
    /// False when conditioning produced no null trajectories to compare.
    pub sufficient: bool,
    pub passed: bool,
}

fn check(name: String, estimate: f64, analytic: f64, std_error: f64, sigma: f64) -> QuantityCheck {
    let pass = if std_error == 0.0 {
        estimate == analytic
    } else {
        (estimate - analytic).abs() <= sigma * std_error
    };
    QuantityCheck {
        name,
        estimate,
        analytic,
        std_error,
        pass,
    }
}

/// Compare the empirical estimates against the analytic null probability and
/// posterior; each deviation must fall within `policy.sigma` standard errors.
///
/// Standard errors use the analytic probabilities, so exactly deterministic
/// quantities are compared exactly.
pub fn mc_validate(config: &McConfig, policy: &TolerancePolicy) -> Result<McValidation> {
    if !(policy.sigma.is_finite() && policy.sigma > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "sigma must be positive, got {}",
            policy.sigma
        )));
    }
    let estimate = run_mc(config)?;
    let samples = config.samples as f64;
    let p_null = null_probability(&config.prior, config.tau);
    let mut checks = vec![check(
        "p_null".into(),
        estimate.p_null_hat,
        p_null,
        (p_null * (1.0 - p_null) / samples).sqrt(),
        policy.sigma,
    )];
    let sufficient = estimate.conditioned.is_some();
    if let Some(cond) = &estimate.conditioned {
        let analytic_post = posterior_null(&config.prior, config.tau);
        let n_null = estimate.n_null as f64;
        for (n, (&q_hat, &q)) in cond
            .posterior_null_hat
            .probs()
            .iter()
            .zip(analytic_post.probs())
            .enumerate()
        {
            checks.push(check(
                format!("posterior[{n}]"),
                q_hat,
                q,
                (q * (1.0 - q) / n_null).sqrt(),
                policy.sigma,
            ));
        }
    }
    let passed = checks.iter().all(|c| c.pass);
    Ok(McValidation {
        estimate,
        checks,
        sufficient,
        passed,
    })
}

/// Total-variation distance between an estimate and a reference distribution.
pub fn total_variation(a: &LevelDistribution, b: &LevelDistribution) -> f64 {
    0.5 * a
        .probs()
        .iter()
        .zip(b.probs())
        .map(|(x, y)| (x - y).abs())
        .sum::<f64>()
}

/// Plug-in analytic information gain, for comparing against `info_gain_hat`.
pub fn analytic_info_gain(config: &McConfig) -> f64 {
    shannon_entropy(&config.prior)
        - entropy_bits_of(posterior_null(&config.prior, config.tau).probs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qubit() -> LevelDistribution {
        LevelDistribution::new(vec![0.5, 0.5]).unwrap()
    }

    fn tau(t: f64) -> ScaledTime {
        ScaledTime::new(t).unwrap()
    }

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn zero_duration_survives_every_trajectory() {
        let config = McConfig {
            prior: qubit(),
            tau: ScaledTime::ZERO,
            samples: 10_000,
            seed: 7,
            workers: 2,
        };
        let est = run_mc(&config).unwrap();
        assert_eq!(est.p_null_hat, 1.0);
        assert_eq!(est.n_null, 10_000);
        let cond = est.conditioned.unwrap();
        // the null posterior is exactly the empirical prior
        assert_eq!(cond.info_gain_hat, 0.0);
    }

    #[test]
    fn estimates_track_analytic_values() {
        let config = McConfig {
            prior: qubit(),
            tau: tau(LN2),
            samples: 1_000_000,
            seed: 42,
            workers: 4,
        };
        let est = run_mc(&config).unwrap();
        assert!((est.p_null_hat - 0.75).abs() <= 4.0 * est.p_null_se);
        let cond = est.conditioned.unwrap();
        let analytic = posterior_null(&config.prior, config.tau);
        assert!(total_variation(&cond.posterior_null_hat, &analytic) < 0.005);
    }

    #[test]
    fn qutrit_estimates_within_four_sigma() {
        let config = McConfig {
            prior: LevelDistribution::new(vec![0.2, 0.4, 0.4]).unwrap(),
            tau: tau(1.0),
            samples: 1_000_000,
            seed: 11,
            workers: 3,
        };
        let validation = mc_validate(&config, &TolerancePolicy::default()).unwrap();
        assert!(validation.sufficient);
        assert!(validation.passed, "checks: {:?}", validation.checks);
    }

    #[test]
    fn identical_seeds_are_bit_identical_across_worker_counts() {
        let base = McConfig {
            prior: LevelDistribution::new(vec![0.2, 0.4, 0.4]).unwrap(),
            tau: tau(0.8),
            samples: 50_000,
            seed: 99,
            workers: 1,
        };
        let reference = run_mc(&base).unwrap();
        for workers in [2, 3, 8, 17] {
            let est = run_mc(&McConfig { workers, ..base.clone() }).unwrap();
            assert_eq!(est.p_null_hat.to_bits(), reference.p_null_hat.to_bits());
            assert_eq!(est.n_null, reference.n_null);
            let (a, b) = (
                est.conditioned.unwrap().posterior_null_hat,
                reference.conditioned.as_ref().unwrap().posterior_null_hat.clone(),
            );
            for (x, y) in a.probs().iter().zip(b.probs()) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn different_seeds_differ() {
        let config = |seed| McConfig {
            prior: qubit(),
            tau: tau(LN2),
            samples: 10_000,
            seed,
            workers: 2,
        };
        let a = run_mc(&config(1)).unwrap();
        let b = run_mc(&config(2)).unwrap();
        assert_ne!(a.n_null, b.n_null);
    }

    #[test]
    fn zero_duration_validation_is_exact_on_p_null() {
        let config = McConfig {
            prior: LevelDistribution::new(vec![0.2, 0.4, 0.4]).unwrap(),
            tau: ScaledTime::ZERO,
            samples: 20_000,
            seed: 123,
            workers: 2,
        };
        let validation = mc_validate(&config, &TolerancePolicy::default()).unwrap();
        assert!(validation.passed, "checks: {:?}", validation.checks);
        let p_null_check = &validation.checks[0];
        assert_eq!(p_null_check.std_error, 0.0);
        assert_eq!(p_null_check.estimate, 1.0);
        assert_eq!(p_null_check.analytic, 1.0);
    }

    #[test]
    fn rare_null_events_yield_insufficient_conditioning() {
        let config = McConfig {
            prior: LevelDistribution::new(vec![0.0, 1.0]).unwrap(),
            tau: tau(50.0),
            samples: 10,
            seed: 3,
            workers: 1,
        };
        let est = run_mc(&config).unwrap();
        assert_eq!(est.n_null, 0);
        assert!(est.conditioned.is_none());
        let validation = mc_validate(&config, &TolerancePolicy::default()).unwrap();
        assert!(!validation.sufficient);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut config = McConfig {
            prior: qubit(),
            tau: tau(1.0),
            samples: 0,
            seed: 0,
            workers: 1,
        };
        assert!(run_mc(&config).is_err());
        config.samples = 10;
        config.workers = 0;
        assert!(run_mc(&config).is_err());
    }

    #[test]
    fn coverage_of_two_sigma_intervals() {
        // over seeds 1..=20 at 1e5 samples, ≥ 90% of runs land within 2σ
        let prior = qubit();
        let t = tau(LN2);
        let p_null = null_probability(&prior, t);
        let analytic_post = posterior_null(&prior, t);
        let samples = 100_000u64;
        let mut hits_p = 0;
        let mut hits_q = vec![0; prior.levels()];
        for seed in 1..=20 {
            let est = run_mc(&McConfig {
                prior: prior.clone(),
                tau: t,
                samples,
                seed,
                workers: 4,
            })
            .unwrap();
            let se_p = (p_null * (1.0 - p_null) / samples as f64).sqrt();
            if (est.p_null_hat - p_null).abs() <= 2.0 * se_p {
                hits_p += 1;
            }
            let cond = est.conditioned.unwrap();
            let n_null = est.n_null as f64;
            for (n, (&q_hat, &q)) in cond
                .posterior_null_hat
                .probs()
                .iter()
                .zip(analytic_post.probs())
                .enumerate()
            {
                let se_q = (q * (1.0 - q) / n_null).sqrt();
                if (q_hat - q).abs() <= 2.0 * se_q {
                    hits_q[n] += 1;
                }
            }
        }
        assert!(hits_p >= 18, "p_null coverage {hits_p}/20");
        for (n, &hits) in hits_q.iter().enumerate() {
            assert!(hits >= 18, "posterior[{n}] coverage {hits}/20");
        }
    }

    #[test]
    fn posterior_converges_along_doubling_schedule() {
        let prior = qubit();
        let t = tau(LN2);
        let analytic = posterior_null(&prior, t);
        let seeds: Vec<u64> = (1..=64).collect();
        let mut medians = Vec::new();
        for k in 0..6 {
            let samples = 2_000u64 << k;
            let mut tvs: Vec<f64> = seeds
                .iter()
                .map(|&seed| {
                    let est = run_mc(&McConfig {
                        prior: prior.clone(),
                        tau: t,
                        samples,
                        seed,
                        workers: 2,
                    })
                    .unwrap();
                    total_variation(&est.conditioned.unwrap().posterior_null_hat, &analytic)
                })
                .collect();
            tvs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            medians.push(tvs[tvs.len() / 2]);
        }
        for pair in medians.windows(2) {
            assert!(pair[1] < pair[0], "medians not decreasing: {medians:?}");
        }
    }
}
