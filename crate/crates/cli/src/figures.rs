//! Bundled panel datasets: the qubit and qutrit panel priors evaluated over
//! the default grid, as plotted-quantity tables (fig1/fig2: static
//! quantities, fig3/fig4: rates appended).

use serde::Serialize;

use nullmeas::panels::{qubit_panels, qutrit_panels, PANEL_LABELS};
use nullmeas::{LevelDistribution, ScaledTime};

use crate::output::{build_rows, ScanRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
#[clap(rename_all = "lower")]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl FigureId {
    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
        }
    }

    pub fn panel_priors(self) -> [LevelDistribution; 4] {
        match self {
            FigureId::Fig1 | FigureId::Fig3 => qubit_panels(),
            FigureId::Fig2 | FigureId::Fig4 => qutrit_panels(),
        }
    }

    pub fn with_rates(self) -> bool {
        matches!(self, FigureId::Fig3 | FigureId::Fig4)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Panel {
    pub label: char,
    pub prior: LevelDistribution,
    pub rows: Vec<ScanRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FigureDataset {
    pub figure: &'static str,
    pub with_rates: bool,
    pub panels: Vec<Panel>,
}

/// Evaluate one dataset over τ ∈ [0, 5] with the given resolution.
pub fn build_figure(id: FigureId, points: usize) -> FigureDataset {
    let last = points - 1;
    let grid: Vec<ScaledTime> = (0..points)
        .map(|i| {
            let tau = if i == last { 5.0 } else { 5.0 * i as f64 / last as f64 };
            ScaledTime::new(tau).expect("grid point is valid")
        })
        .collect();
    let panels = id
        .panel_priors()
        .into_iter()
        .zip(PANEL_LABELS)
        .map(|(prior, label)| Panel {
            label,
            rows: build_rows(&prior, &grid, id.with_rates()),
            prior,
        })
        .collect();
    FigureDataset {
        figure: id.name(),
        with_rates: id.with_rates(),
        panels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_panels_carry_the_qubit_priors() {
        let ds = build_figure(FigureId::Fig1, 3);
        let expected: [&[f64]; 4] = [&[0.5, 0.5], &[0.6, 0.4], &[0.2, 0.8], &[0.3, 0.7]];
        assert_eq!(ds.panels.len(), 4);
        for (panel, probs) in ds.panels.iter().zip(expected) {
            assert_eq!(panel.prior.probs(), probs);
        }
        assert!(!ds.with_rates);
    }

    #[test]
    fn fig2_panels_carry_the_qutrit_priors() {
        let ds = build_figure(FigureId::Fig2, 3);
        let third = 1.0 / 3.0;
        let expected: [&[f64]; 4] = [
            &[third, third, third],
            &[0.2, 0.4, 0.4],
            &[0.5, 0.3, 0.2],
            &[0.2, 0.2, 0.6],
        ];
        for (panel, probs) in ds.panels.iter().zip(expected) {
            assert_eq!(panel.prior.probs(), probs);
        }
    }

    #[test]
    fn rate_figures_start_from_the_closed_form_limits() {
        let ds = build_figure(FigureId::Fig3, 11);
        let first = &ds.panels[0].rows[0];
        assert_eq!(first.tau, 0.0);
        assert!(first.d_info_gain.unwrap().abs() < 1e-12);
        assert!((first.d_p_rev.unwrap() - (-0.5)).abs() < 1e-12);
    }
}
