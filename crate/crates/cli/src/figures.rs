//! Datasets behind the published plots of the model.

use std::str::FromStr;

use optomech_core::Config;

use crate::error::{CliError, Result};
use crate::sweep::{run_sweep, Axis, AxisName, Output, SweepOptions, SweepSpec};
use crate::table::{Cell, Table};

pub const LOW_POWER_MW: f64 = 6.9;
pub const HIGH_POWER_MW: f64 = 10.7;
/// g_q/g_l values compared against each other as a function of power.
pub const COUPLING_RATIOS: [f64; 3] = [-12e-6, 0.0, 20e-6];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Spectra over (g_q/g_l, ω) at the lower power.
    Fig2a,
    /// Same at the higher power; unstable rows stay blank.
    Fig2b,
    /// Mode frequencies and widths vs g_q/g_l at both powers.
    Fig3,
    /// G̃|a_s| vs power for three coupling ratios.
    Fig4,
    /// Photon number vs g_q/g_l at both powers.
    Fig5,
}

impl FigureId {
    pub const ALL: [Self; 5] = [
        FigureId::Fig2a,
        FigureId::Fig2b,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
        }
    }
}

impl FromStr for FigureId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| CliError::Config(format!("unknown figure `{s}`")))
    }
}

fn ratio_axis(min: f64, max: f64) -> Axis {
    // one point per 1e-6
    let points = ((max - min) / 1e-6).round() as usize + 1;
    Axis::new(AxisName::GqRatio, min, max, points)
}

fn both_powers() -> Axis {
    Axis::new(AxisName::PowerMw, LOW_POWER_MW, HIGH_POWER_MW, 2)
}

/// Sweeps making up a figure, each with an optional g_q/g_l fixed through
/// the config and reported as a leading column.
pub fn figure_sweeps(id: FigureId) -> Vec<(Option<f64>, Option<f64>, SweepSpec)> {
    let spectrum = |power| {
        (
            Some(power),
            None,
            SweepSpec {
                axis1: ratio_axis(-9e-6, 9e-6),
                axis2: Some(Axis::new(AxisName::OmegaOverOmegaM, 0.5, 1.5, 4001)),
                outputs: vec![Output::Spectrum],
            },
        )
    };
    let vs_ratio = |output| {
        (
            None,
            None,
            SweepSpec {
                axis1: both_powers(),
                axis2: Some(ratio_axis(-12e-6, 20e-6)),
                outputs: vec![output],
            },
        )
    };
    match id {
        FigureId::Fig2a => vec![spectrum(LOW_POWER_MW)],
        FigureId::Fig2b => vec![spectrum(HIGH_POWER_MW)],
        FigureId::Fig3 => vec![vs_ratio(Output::Peaks)],
        FigureId::Fig4 => COUPLING_RATIOS
            .iter()
            .map(|&r| {
                (
                    None,
                    Some(r),
                    SweepSpec {
                        axis1: Axis::new(AxisName::PowerMw, 0.1, 12.0, 120),
                        axis2: None,
                        outputs: vec![Output::EffectiveCoupling],
                    },
                )
            })
            .collect(),
        FigureId::Fig5 => vec![vs_ratio(Output::PhotonNumber)],
    }
}

pub fn run_figure(id: FigureId, base: &Config, opts: &SweepOptions) -> Result<Table> {
    let mut table = Table::default();
    for (power, ratio, spec) in figure_sweeps(id) {
        let mut config = *base;
        if let Some(p) = power {
            config.set("power_mw", p)?;
        }
        if let Some(r) = ratio {
            config.set("g_q_ratio", r)?;
        }
        let mut part = run_sweep(&config, &spec, opts)?;
        if let Some(r) = ratio {
            part = part.with_leading_column("gq_ratio", Cell::Num(r));
        }
        table.extend(part);
    }
    Ok(table)
}
