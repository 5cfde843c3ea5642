//! Row assembly and CSV/JSON rendering.
//!
//! CSV column contract:
//! `tau,p_null,entropy_prior,entropy_post_null,info_gain,mutual_info,fidelity,p_rev,rel_entropy`
//! with `,d_info_gain,d_fidelity,d_p_rev` appended when rates are requested.
//! Floats are printed with 12 significant digits, so identical runs are
//! byte-identical.

use serde::Serialize;

use nullmeas::{info_snapshot, rate_snapshot, Crossing, LevelDistribution, ScaledTime, ThresholdReport};

pub const SNAPSHOT_HEADER: &str =
    "tau,p_null,entropy_prior,entropy_post_null,info_gain,mutual_info,fidelity,p_rev,rel_entropy";
pub const RATE_COLUMNS: &str = ",d_info_gain,d_fidelity,d_p_rev";

/// 12 significant digits.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.11e}")
}

/// One grid row; the rate columns are present only when rates were requested.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub tau: f64,
    pub p_null: f64,
    pub entropy_prior: f64,
    pub entropy_post_null: f64,
    pub info_gain: f64,
    pub mutual_info: f64,
    pub fidelity: f64,
    pub p_rev: f64,
    pub rel_entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_info_gain: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_fidelity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_p_rev: Option<f64>,
}

pub fn build_row(prior: &LevelDistribution, tau: ScaledTime, with_rates: bool) -> ScanRow {
    let snap = info_snapshot(prior, tau);
    let rates = with_rates.then(|| rate_snapshot(prior, tau));
    ScanRow {
        tau: snap.tau,
        p_null: snap.p_null,
        entropy_prior: snap.entropy_prior,
        entropy_post_null: snap.entropy_posterior_null,
        info_gain: snap.info_gain,
        mutual_info: snap.mutual_info,
        fidelity: snap.fidelity,
        p_rev: snap.p_rev,
        rel_entropy: snap.rel_entropy,
        d_info_gain: rates.as_ref().map(|r| r.d_info_gain),
        d_fidelity: rates.as_ref().map(|r| r.d_fidelity),
        d_p_rev: rates.as_ref().map(|r| r.d_p_rev),
    }
}

pub fn build_rows(
    prior: &LevelDistribution,
    grid: &[ScaledTime],
    with_rates: bool,
) -> Vec<ScanRow> {
    grid.iter().map(|&tau| build_row(prior, tau, with_rates)).collect()
}

pub fn rows_header(with_rates: bool) -> String {
    if with_rates {
        format!("{SNAPSHOT_HEADER}{RATE_COLUMNS}")
    } else {
        SNAPSHOT_HEADER.to_string()
    }
}

pub fn rows_to_csv(rows: &[ScanRow], with_rates: bool) -> String {
    let mut out = rows_header(with_rates);
    out.push('\n');
    for row in rows {
        let mut fields = vec![
            fmt_f64(row.tau),
            fmt_f64(row.p_null),
            fmt_f64(row.entropy_prior),
            fmt_f64(row.entropy_post_null),
            fmt_f64(row.info_gain),
            fmt_f64(row.mutual_info),
            fmt_f64(row.fidelity),
            fmt_f64(row.p_rev),
            fmt_f64(row.rel_entropy),
        ];
        if with_rates {
            fields.push(fmt_f64(row.d_info_gain.expect("rates requested")));
            fields.push(fmt_f64(row.d_fidelity.expect("rates requested")));
            fields.push(fmt_f64(row.d_p_rev.expect("rates requested")));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn prior_label(prior: &LevelDistribution) -> String {
    prior
        .probs()
        .iter()
        .map(|&p| fmt_f64(p))
        .collect::<Vec<_>>()
        .join(";")
}

fn crossing_field(crossing: Crossing) -> String {
    match crossing {
        Crossing::Reached(tau) => fmt_f64(tau),
        Crossing::NotReached => "not-reached".to_string(),
    }
}

pub const THRESHOLD_HEADER: &str =
    "prior,tau_fidelity_90,tau_prev_50,tau_info_90,i_max_mode,tau_max";

pub fn thresholds_to_csv(reports: &[ThresholdReport]) -> String {
    let mut out = THRESHOLD_HEADER.to_string();
    out.push('\n');
    for report in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            prior_label(&report.prior),
            crossing_field(report.tau_fidelity_90),
            crossing_field(report.tau_prev_50),
            crossing_field(report.tau_info_90),
            report.i_max_mode,
            fmt_f64(report.tau_max),
        ));
    }
    out
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}
