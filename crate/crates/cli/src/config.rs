//! Run configuration: a single TOML document with explicit keys. Unknown
//! keys are rejected so typos cannot silently change a run.

use std::path::Path;

use serde::{Deserialize, Serialize};

use nullmeas::{IMaxMode, LevelDistribution, McConfig, ScaledTime};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[clap(rename_all = "lower")]
pub enum OutputKind {
    Snapshots,
    Rates,
    Thresholds,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[clap(rename_all = "lower")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Monte Carlo section of a scan configuration. The prior defaults to the
/// scan prior when omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior: Option<LevelDistribution>,
    pub tau: ScaledTime,
    pub samples: u64,
    pub seed: u64,
    pub workers: u64,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
}

fn default_sigma() -> f64 {
    4.0
}

/// One grid run: prior, τ window, resolution, requested outputs, and format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub prior: LevelDistribution,
    #[serde(default)]
    pub tau_min: f64,
    #[serde(default = "default_tau_max")]
    pub tau_max: f64,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub i_max_mode: IMaxMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<McSection>,
    #[serde(default)]
    pub output_format: OutputFormat,
}

fn default_tau_max() -> f64 {
    5.0
}

fn default_points() -> usize {
    501
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Snapshots]
}

impl ScanConfig {
    pub fn validate(&self) -> CliResult<()> {
        if !self.tau_min.is_finite() || self.tau_min < 0.0 {
            return Err(CliError::Validation(format!(
                "config field `tau_min`: must be finite and non-negative, got {}",
                self.tau_min
            )));
        }
        if !self.tau_max.is_finite() {
            return Err(CliError::Validation(format!(
                "config field `tau_max`: must be finite, got {}",
                self.tau_max
            )));
        }
        if self.tau_min >= self.tau_max {
            return Err(CliError::Validation(format!(
                "config fields `tau_min`/`tau_max`: need tau_min < tau_max, got {} >= {}",
                self.tau_min, self.tau_max
            )));
        }
        if self.points < 2 {
            return Err(CliError::Validation(format!(
                "config field `points`: need at least 2 grid points, got {}",
                self.points
            )));
        }
        if self.outputs.is_empty() {
            return Err(CliError::Validation(
                "config field `outputs`: at least one output kind is required".into(),
            ));
        }
        let mut seen = Vec::new();
        for kind in &self.outputs {
            if seen.contains(kind) {
                return Err(CliError::Validation(format!(
                    "config field `outputs`: duplicate entry {kind:?}"
                )));
            }
            seen.push(*kind);
        }
        if self.outputs.contains(&OutputKind::Mc) && self.mc.is_none() {
            return Err(CliError::Validation(
                "config requests the `mc` output but has no [mc] section".into(),
            ));
        }
        if let Some(mc) = &self.mc {
            if mc.samples == 0 {
                return Err(CliError::Validation(
                    "config field `mc.samples`: must be at least 1".into(),
                ));
            }
            if mc.workers == 0 {
                return Err(CliError::Validation(
                    "config field `mc.workers`: must be at least 1".into(),
                ));
            }
            if !(mc.sigma.is_finite() && mc.sigma > 0.0) {
                return Err(CliError::Validation(format!(
                    "config field `mc.sigma`: must be positive, got {}",
                    mc.sigma
                )));
            }
        }
        Ok(())
    }

    pub fn wants(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }

    /// Uniform inclusive τ grid with exact endpoints.
    pub fn grid(&self) -> Vec<ScaledTime> {
        let span = self.tau_max - self.tau_min;
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                let tau = if i == last {
                    self.tau_max
                } else {
                    self.tau_min + span * i as f64 / last as f64
                };
                ScaledTime::new(tau).expect("grid point inside a validated window")
            })
            .collect()
    }

    /// The fully resolved Monte Carlo configuration, when one is requested.
    pub fn mc_config(&self) -> Option<(McConfig, f64)> {
        self.mc.as_ref().map(|section| {
            (
                McConfig {
                    prior: section.prior.clone().unwrap_or_else(|| self.prior.clone()),
                    tau: section.tau,
                    samples: section.samples,
                    seed: section.seed,
                    workers: section.workers,
                },
                section.sigma,
            )
        })
    }

    pub fn from_toml_str(text: &str) -> CliResult<Self> {
        let config: ScanConfig = toml::from_str(text)
            .map_err(|err| CliError::Validation(format!("config parse error: {err}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("scan configuration serializes")
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|err| {
            CliError::Io(format!("cannot read config {}: {err}", path.display()))
        })?;
        Self::from_toml_str(&text)
    }
}
