//! Domain types: the photon-number probability vector and the scaled time axis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance accepted on ingestion before renormalizing to machine precision.
const INGEST_SUM_TOL: f64 = 1e-9;

/// Probability vector `p(x_n)` over photon-number levels `n = 0..N`.
///
/// Entries are validated on construction (non-negative, each at most 1 up to
/// the ingestion tolerance, summing to 1 within 1e-9) and then renormalized,
/// so every held value sums to 1 at machine precision. Zero entries are
/// permitted; a distribution needs at least two levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct LevelDistribution {
    probs: Vec<f64>,
}

impl LevelDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::TooFewLevels(probs.len()));
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() || !(0.0..=1.0 + INGEST_SUM_TOL).contains(&value) {
                return Err(Error::InvalidProbability { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > INGEST_SUM_TOL {
            return Err(Error::NotNormalized { sum });
        }
        let probs = probs.into_iter().map(|p| p / sum).collect();
        Ok(Self { probs })
    }

    /// Uniform distribution over `levels` levels.
    pub fn uniform(levels: usize) -> Result<Self> {
        if levels < 2 {
            return Err(Error::TooFewLevels(levels));
        }
        Ok(Self {
            probs: vec![1.0 / levels as f64; levels],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of levels, N + 1.
    pub fn levels(&self) -> usize {
        self.probs.len()
    }

    /// Maximum excitation number N.
    pub fn max_level(&self) -> usize {
        self.probs.len() - 1
    }

    /// Mean photon number ⟨n⟩ = Σ n p(x_n).
    pub fn mean_level(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    /// True when all weight sits on a single level.
    pub fn is_deterministic(&self) -> bool {
        self.probs.iter().filter(|&&p| p > 0.0).count() == 1
    }

    /// Lowest level with non-zero weight.
    pub(crate) fn lowest_occupied(&self) -> usize {
        self.probs.iter().position(|&p| p > 0.0).unwrap_or(0)
    }
}

impl TryFrom<Vec<f64>> for LevelDistribution {
    type Error = Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        Self::new(probs)
    }
}

impl From<LevelDistribution> for Vec<f64> {
    fn from(dist: LevelDistribution) -> Self {
        dist.probs
    }
}

/// Dimensionless measurement duration τ = 2γt.
///
/// The decay rate and wall-clock time only ever enter through this product,
/// so the pair is carried as a single non-negative finite number.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ScaledTime(f64);

impl ScaledTime {
    pub const ZERO: ScaledTime = ScaledTime(0.0);

    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidTime(tau));
        }
        Ok(Self(tau))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for ScaledTime {
    type Error = Error;

    fn try_from(tau: f64) -> Result<Self> {
        Self::new(tau)
    }
}

impl From<ScaledTime> for f64 {
    fn from(tau: ScaledTime) -> f64 {
        tau.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_distribution() {
        let d = LevelDistribution::new(vec![0.2, 0.4, 0.4]).unwrap();
        assert_eq!(d.levels(), 3);
        assert_eq!(d.max_level(), 2);
        assert!((d.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn renormalizes_within_ingestion_tolerance() {
        let d = LevelDistribution::new(vec![0.5, 0.5 + 4e-10]).unwrap();
        assert!((d.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            LevelDistribution::new(vec![1.0]),
            Err(Error::TooFewLevels(1))
        ));
        assert!(matches!(
            LevelDistribution::new(vec![-0.1, 1.1]),
            Err(Error::InvalidProbability { index: 0, .. })
        ));
        assert!(matches!(
            LevelDistribution::new(vec![0.5, 0.6]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            LevelDistribution::new(vec![f64::NAN, 1.0]),
            Err(Error::InvalidProbability { .. })
        ));
    }

    #[test]
    fn permits_zero_entries() {
        let d = LevelDistribution::new(vec![0.0, 1.0]).unwrap();
        assert!(d.is_deterministic());
        assert_eq!(d.lowest_occupied(), 1);
    }

    #[test]
    fn mean_level_of_uniform_qutrit() {
        let d = LevelDistribution::uniform(3).unwrap();
        assert!((d.mean_level() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scaled_time_validation() {
        assert!(ScaledTime::new(0.0).is_ok());
        assert!(ScaledTime::new(50.0).is_ok());
        assert!(matches!(ScaledTime::new(-0.1), Err(Error::InvalidTime(_))));
        assert!(matches!(
            ScaledTime::new(f64::INFINITY),
            Err(Error::InvalidTime(_))
        ));
    }
}
