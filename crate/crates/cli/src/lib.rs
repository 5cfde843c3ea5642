//! Command-line front end: grid scans, rate scans, threshold reports,
//! bundled panel datasets, Monte Carlo validation, and threshold-table
//! verification, emitted as CSV or JSON.

pub mod config;
pub mod error;
pub mod figures;
pub mod output;
pub mod verify;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nullmeas::{
    mc_validate, threshold_report, IMaxMode, LevelDistribution, McConfig, McValidation,
    ScaledTime, ThresholdReport, TolerancePolicy,
};

use config::{OutputFormat, OutputKind, ScanConfig};
use error::{CliError, CliResult};
use figures::{build_figure, FigureId};
use output::{build_rows, rows_to_csv, thresholds_to_csv, to_json_pretty, ScanRow};

#[derive(Debug, Parser)]
#[command(
    name = "nullmeas",
    about = "Information dynamics of null-result weak measurements",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the static quantities (optionally rates, thresholds, MC) on a τ grid
    Scan(ScanArgs),
    /// Evaluate the analytic rates alongside the static quantities on a τ grid
    Rates(GridArgs),
    /// Report the threshold crossing times for one prior
    Thresholds(ThresholdArgs),
    /// Write one of the bundled panel datasets (fig1-fig4)
    Figure(FigureArgs),
    /// Run trajectory Monte Carlo and compare against the analytic model
    McValidate(McArgs),
    /// Recompute both threshold tables and compare against the reference values
    VerifyTables(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Prior probabilities, comma separated (e.g. 0.5,0.5)
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub prior: Option<Vec<f64>>,
    /// Lower end of the τ grid
    #[arg(long)]
    pub tau_min: Option<f64>,
    /// Upper end of the τ grid
    #[arg(long)]
    pub tau_max: Option<f64>,
    /// Number of grid points, endpoints included
    #[arg(long)]
    pub points: Option<usize>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Reading of the information-gain maximum (window | asymptotic)
    #[arg(long, value_parser = parse_i_max_mode)]
    pub i_max_mode: Option<IMaxMode>,
    /// Write here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Which outputs to compute (snapshots, rates, thresholds, mc)
    #[arg(long, value_delimiter = ',', num_args = 1.., value_enum)]
    pub outputs: Option<Vec<OutputKind>>,
    /// Read the whole run configuration from a TOML document
    #[arg(
        long,
        conflicts_with_all = ["prior", "tau_min", "tau_max", "points", "outputs", "format", "i_max_mode"]
    )]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// Prior probabilities, comma separated
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub prior: Vec<f64>,
    /// Search window end
    #[arg(long, default_value_t = 5.0)]
    pub tau_max: f64,
    /// Reading of the information-gain maximum (window | asymptotic)
    #[arg(long, value_parser = parse_i_max_mode, default_value = "window")]
    pub i_max_mode: IMaxMode,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Dataset to emit
    #[arg(value_enum)]
    pub id: FigureId,
    /// Number of grid points over τ ∈ [0, 5]
    #[arg(long, default_value_t = 501)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Directory the dataset files are written into
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct McArgs {
    /// Prior probabilities, comma separated
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub prior: Vec<f64>,
    /// Measurement duration τ
    #[arg(long)]
    pub tau: f64,
    /// Trajectory count
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Random seed; fixed seed and any worker count reproduce bit-identically
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads the trajectories are split across
    #[arg(long, default_value_t = 1)]
    pub workers: u64,
    /// Accepted deviation in standard errors
    #[arg(long, default_value_t = 4.0)]
    pub sigma: f64,
    /// Machine-readable output instead of the text report
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Write the comparison as JSON here in addition to the text report
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_prior(probs: &[f64]) -> CliResult<LevelDistribution> {
    LevelDistribution::new(probs.to_vec())
        .map_err(|err| CliError::Validation(format!("--prior: {err}")))
}

fn parse_i_max_mode(s: &str) -> Result<IMaxMode, String> {
    match s {
        "window" => Ok(IMaxMode::Window),
        "asymptotic" => Ok(IMaxMode::Asymptotic),
        _ => Err(format!("expected `window` or `asymptotic`, got `{s}`")),
    }
}

fn scaled(tau: f64, what: &str) -> CliResult<ScaledTime> {
    ScaledTime::new(tau).map_err(|err| CliError::Validation(format!("{what}: {err}")))
}

fn write_or_print(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|err| CliError::Io(format!("cannot write {}: {err}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}_{suffix}.{ext}"))
}

/// Everything a scan run produced, in grid order.
#[derive(Debug, Serialize)]
pub struct ScanDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<ScanRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<ThresholdReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc: Option<McValidation>,
}

fn scan_config_from_args(args: &ScanArgs) -> CliResult<ScanConfig> {
    if let Some(path) = &args.config {
        return ScanConfig::load(path);
    }
    let prior = args
        .grid
        .prior
        .as_deref()
        .ok_or_else(|| CliError::Validation("either --prior or --config is required".into()))?;
    let config = ScanConfig {
        prior: parse_prior(prior)?,
        tau_min: args.grid.tau_min.unwrap_or(0.0),
        tau_max: args.grid.tau_max.unwrap_or(5.0),
        points: args.grid.points.unwrap_or(501),
        outputs: args
            .outputs
            .clone()
            .unwrap_or_else(|| vec![OutputKind::Snapshots]),
        i_max_mode: args.grid.i_max_mode.unwrap_or_default(),
        mc: None,
        output_format: args.grid.format.unwrap_or_default(),
    };
    config.validate()?;
    Ok(config)
}

/// Run one configured scan and emit the requested outputs.
pub fn run_scan(config: &ScanConfig, out: Option<&Path>) -> CliResult<()> {
    config.validate()?;
    let with_rates = config.wants(OutputKind::Rates);
    let grid_requested = config.wants(OutputKind::Snapshots) || with_rates;
    let rows = grid_requested.then(|| build_rows(&config.prior, &config.grid(), with_rates));
    let thresholds = if config.wants(OutputKind::Thresholds) {
        Some(threshold_report(
            &config.prior,
            config.i_max_mode,
            scaled(config.tau_max, "tau_max")?,
        )?)
    } else {
        None
    };
    let mc = if config.wants(OutputKind::Mc) {
        let (mc_config, sigma) = config
            .mc_config()
            .expect("validated config with mc output has an mc section");
        Some(mc_validate(&mc_config, &TolerancePolicy { sigma })?)
    } else {
        None
    };

    match config.output_format {
        OutputFormat::Json => {
            let doc = ScanDocument {
                rows,
                thresholds,
                mc,
            };
            write_or_print(out, &to_json_pretty(&doc))
        }
        OutputFormat::Csv => {
            let mut parts: Vec<(Option<&str>, String)> = Vec::new();
            if let Some(rows) = &rows {
                parts.push((None, rows_to_csv(rows, with_rates)));
            }
            if let Some(report) = &thresholds {
                parts.push((
                    Some("thresholds"),
                    thresholds_to_csv(std::slice::from_ref(report)),
                ));
            }
            if let Some(validation) = &mc {
                parts.push((Some("mc"), mc_checks_csv(validation)));
            }
            if parts.len() > 1 && out.is_none() {
                return Err(CliError::Validation(
                    "CSV with multiple outputs needs --out to name the files".into(),
                ));
            }
            for (suffix, text) in &parts {
                match (suffix, out) {
                    (None, _) => write_or_print(out, text)?,
                    (Some(suffix), Some(base)) => {
                        let path = if parts.len() == 1 {
                            base.to_path_buf()
                        } else {
                            sibling(base, suffix)
                        };
                        write_or_print(Some(&path), text)?
                    }
                    (Some(_), None) => write_or_print(None, text)?,
                }
            }
            Ok(())
        }
    }
}

fn mc_checks_csv(validation: &McValidation) -> String {
    let mut out = String::from("name,estimate,analytic,std_error,pass\n");
    for check in &validation.checks {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            check.name,
            output::fmt_f64(check.estimate),
            output::fmt_f64(check.analytic),
            output::fmt_f64(check.std_error),
            check.pass,
        ));
    }
    out
}

fn mc_text_report(validation: &McValidation) -> String {
    let mut text = String::new();
    for check in &validation.checks {
        text.push_str(&format!(
            "{:<14} estimate={} analytic={} se={} {}\n",
            check.name,
            output::fmt_f64(check.estimate),
            output::fmt_f64(check.analytic),
            output::fmt_f64(check.std_error),
            if check.pass { "PASS" } else { "FAIL" },
        ));
    }
    if !validation.sufficient {
        text.push_str("insufficient conditioning: no null trajectory survived; only p_null was compared\n");
    }
    text.push_str(&format!(
        "mc-validate: {} (n_null={} of {} trajectories)\n",
        if validation.passed && validation.sufficient {
            "PASS"
        } else {
            "FAIL"
        },
        validation.estimate.n_null,
        validation.estimate.samples,
    ));
    text
}

fn cmd_rates(args: &GridArgs) -> CliResult<()> {
    let prior = args
        .prior
        .as_deref()
        .ok_or_else(|| CliError::Validation("--prior is required".into()))?;
    let config = ScanConfig {
        prior: parse_prior(prior)?,
        tau_min: args.tau_min.unwrap_or(0.0),
        tau_max: args.tau_max.unwrap_or(5.0),
        points: args.points.unwrap_or(501),
        outputs: vec![OutputKind::Snapshots, OutputKind::Rates],
        i_max_mode: args.i_max_mode.unwrap_or_default(),
        mc: None,
        output_format: args.format.unwrap_or_default(),
    };
    run_scan(&config, args.out.as_deref())
}

fn cmd_thresholds(args: &ThresholdArgs) -> CliResult<()> {
    let prior = parse_prior(&args.prior)?;
    let report = threshold_report(&prior, args.i_max_mode, scaled(args.tau_max, "--tau-max")?)?;
    let text = match args.format {
        OutputFormat::Csv => thresholds_to_csv(std::slice::from_ref(&report)),
        OutputFormat::Json => to_json_pretty(&report),
    };
    write_or_print(args.out.as_deref(), &text)
}

fn cmd_figure(args: &FigureArgs) -> CliResult<()> {
    if args.points < 2 {
        return Err(CliError::Validation(format!(
            "--points: need at least 2 grid points, got {}",
            args.points
        )));
    }
    let dataset = build_figure(args.id, args.points);
    match args.format {
        OutputFormat::Csv => {
            for panel in &dataset.panels {
                let path = args
                    .out
                    .join(format!("{}_panel_{}.csv", dataset.figure, panel.label));
                write_or_print(Some(&path), &rows_to_csv(&panel.rows, dataset.with_rates))?;
            }
            Ok(())
        }
        OutputFormat::Json => {
            let path = args.out.join(format!("{}.json", dataset.figure));
            write_or_print(Some(&path), &to_json_pretty(&dataset))
        }
    }
}

fn cmd_mc_validate(args: &McArgs) -> CliResult<()> {
    let config = McConfig {
        prior: parse_prior(&args.prior)?,
        tau: scaled(args.tau, "--tau")?,
        samples: args.samples,
        seed: args.seed,
        workers: args.workers,
    };
    let validation = mc_validate(&config, &TolerancePolicy { sigma: args.sigma })?;
    let text = match args.format {
        None => mc_text_report(&validation),
        Some(OutputFormat::Csv) => mc_checks_csv(&validation),
        Some(OutputFormat::Json) => to_json_pretty(&validation),
    };
    write_or_print(args.out.as_deref(), &text)?;
    if validation.passed && validation.sufficient {
        Ok(())
    } else {
        Err(CliError::Verification(
            "Monte Carlo estimates deviate from the analytic model".into(),
        ))
    }
}

fn cmd_verify_tables(args: &VerifyArgs) -> CliResult<()> {
    let report = verify::verify_tables();
    print!("{}", verify::render_text(&report));
    if let Some(path) = &args.out {
        write_or_print(Some(path), &to_json_pretty(&report))?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Verification(
            "threshold tables deviate from the reference values".into(),
        ))
    }
}

/// Dispatch a parsed command line.
pub fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Scan(args) => {
            let config = scan_config_from_args(args)?;
            run_scan(&config, args.grid.out.as_deref())
        }
        Command::Rates(args) => cmd_rates(args),
        Command::Thresholds(args) => cmd_thresholds(args),
        Command::Figure(args) => cmd_figure(args),
        Command::McValidate(args) => cmd_mc_validate(args),
        Command::VerifyTables(args) => cmd_verify_tables(args),
    }
}
