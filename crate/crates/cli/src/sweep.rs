//! Grid sweeps over the operating point and, optionally, the analysis
//! frequency. Points are evaluated in parallel; rows come out in grid order
//! (first axis outermost).

use std::collections::HashMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use optomech_core::{Config, Spectrum, SpectrumMethod};

use crate::error::{CliError, Result};
use crate::point::{evaluate, PointReport};
use crate::table::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    PowerMw,
    GqRatio,
    DetuningOverOmegaM,
    OmegaOverOmegaM,
}

impl AxisName {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxisName::PowerMw => "power_mw",
            AxisName::GqRatio => "gq_ratio",
            AxisName::DetuningOverOmegaM => "detuning_over_omega_m",
            AxisName::OmegaOverOmegaM => "omega_over_omega_m",
        }
    }

    fn config_key(&self) -> Option<&'static str> {
        match self {
            AxisName::PowerMw => Some("power_mw"),
            AxisName::GqRatio => Some("g_q_ratio"),
            AxisName::DetuningOverOmegaM => Some("detuning_over_omega_m"),
            AxisName::OmegaOverOmegaM => None,
        }
    }
}

impl FromStr for AxisName {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        [
            AxisName::PowerMw,
            AxisName::GqRatio,
            AxisName::DetuningOverOmegaM,
            AxisName::OmegaOverOmegaM,
        ]
        .into_iter()
        .find(|a| a.as_str() == s)
        .ok_or_else(|| CliError::Config(format!("unknown sweep axis `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(name: AxisName, min: f64, max: f64, points: usize) -> Self {
        Self {
            name,
            min,
            max,
            points,
        }
    }

    /// Parse `min:max:points`.
    pub fn parse(name: AxisName, text: &str) -> Result<Self> {
        let bad = || {
            CliError::Config(format!(
                "{}: expected min:max:points, got `{text}`",
                name.as_str()
            ))
        };
        let parts: Vec<&str> = text.split(':').collect();
        let [min, max, points] = parts[..] else {
            return Err(bad());
        };
        Ok(Self::new(
            name,
            min.trim().parse().map_err(|_| bad())?,
            max.trim().parse().map_err(|_| bad())?,
            points.trim().parse().map_err(|_| bad())?,
        ))
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    SteadyState,
    Stability,
    Spectrum,
    Peaks,
    PhotonNumber,
    EffectiveCoupling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub outputs: Vec<Output>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        for axis in self.axes() {
            if axis.points < 2 {
                return Err(CliError::Config(format!(
                    "axis {} needs at least 2 points",
                    axis.name.as_str()
                )));
            }
            if !(axis.min.is_finite() && axis.max.is_finite()) {
                return Err(CliError::Config(format!(
                    "axis {} has a non-finite bound",
                    axis.name.as_str()
                )));
            }
        }
        if let Some(a2) = &self.axis2 {
            if a2.name == self.axis1.name {
                return Err(CliError::Config(format!(
                    "axis {} given twice",
                    a2.name.as_str()
                )));
            }
        }
        if self.outputs.is_empty() {
            return Err(CliError::Config("no outputs requested".into()));
        }
        let has_omega = self.axes().any(|a| a.name == AxisName::OmegaOverOmegaM);
        if self.outputs.contains(&Output::Spectrum) != has_omega {
            return Err(CliError::Config(
                "spectrum output and the omega_over_omega_m axis go together".into(),
            ));
        }
        Ok(())
    }

    pub fn axes(&self) -> impl Iterator<Item = &Axis> {
        std::iter::once(&self.axis1).chain(self.axis2.as_ref())
    }

    /// Grid points in row order, one value per axis.
    pub fn grid(&self) -> Vec<Vec<f64>> {
        let first = self.axis1.values();
        match &self.axis2 {
            None => first.into_iter().map(|v| vec![v]).collect(),
            Some(a2) => {
                let second = a2.values();
                first
                    .iter()
                    .flat_map(|&u| second.iter().map(move |&v| vec![u, v]))
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepOptions {
    pub method: SpectrumMethod,
    /// Add a matrix-oracle spectrum column next to the selected method.
    pub oracle: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            method: SpectrumMethod::AnalyticCorrected,
            oracle: false,
        }
    }
}

pub fn header(spec: &SweepSpec, opts: &SweepOptions) -> Vec<String> {
    let mut h: Vec<String> = spec.axes().map(|a| a.name.as_str().to_string()).collect();
    for out in &spec.outputs {
        let cols: &[&str] = match out {
            Output::SteadyState => &[
                "x_s",
                "p_s",
                "a_s_re",
                "a_s_im",
                "delta_eff",
                "omega_m_eff",
                "g_tilde",
            ],
            Output::Stability => &["rh_stable", "eig_stable", "max_re_eigenvalue"],
            Output::Spectrum if opts.oracle => &["s_xx", "method", "s_xx_oracle"],
            Output::Spectrum => &["s_xx", "method"],
            Output::Peaks => &[
                "omega_plus",
                "omega_minus",
                "gamma_plus",
                "gamma_minus",
                "resolved",
            ],
            Output::PhotonNumber => &["photon_number"],
            Output::EffectiveCoupling => &["g_eff", "threshold"],
        };
        h.extend(cols.iter().map(|c| c.to_string()));
    }
    if spec.outputs != [Output::Stability] {
        h.push("stable".into());
    }
    h
}

/// Config at one grid point.
pub fn point_config(base: &Config, spec: &SweepSpec, values: &[f64]) -> Result<Config> {
    let mut config = *base;
    for (axis, &v) in spec.axes().zip(values) {
        if let Some(key) = axis.name.config_key() {
            config.set(key, v)?;
        }
    }
    config.system_params()?;
    config.drive()?;
    Ok(config)
}

fn omega_of(spec: &SweepSpec, values: &[f64]) -> Option<f64> {
    spec.axes()
        .zip(values)
        .find(|(a, _)| a.name == AxisName::OmegaOverOmegaM)
        .map(|(_, &v)| v)
}

/// One CSV row for a grid point. Numeric fields other than the stability
/// verdict are left blank when the operating branch is unstable.
pub fn row(
    spec: &SweepSpec,
    opts: &SweepOptions,
    values: &[f64],
    report: &PointReport,
) -> Result<Vec<Cell>> {
    let params = report.config.system_params()?;
    let wm = params.omega_m();
    let b = &report.operating;
    let stable = report.stability.eig_stable;
    let num = |x: f64| if stable { Cell::Num(x) } else { Cell::Blank };

    let mut cells: Vec<Cell> = values.iter().map(|&v| Cell::Num(v)).collect();
    for out in &spec.outputs {
        match out {
            Output::SteadyState => cells.extend([
                num(b.x_s),
                num(b.p_s),
                num(b.a_s.re),
                num(b.a_s.im),
                num(b.delta_eff),
                num(b.omega_m_eff),
                num(b.g_eff),
            ]),
            Output::Stability => cells.extend([
                Cell::Bool(report.stability.rh_stable),
                Cell::Bool(report.stability.eig_stable),
                Cell::Num(report.stability.max_re_eigenvalue),
            ]),
            Output::Spectrum => {
                let w = omega_of(spec, values).expect("validated") * wm;
                let s = Spectrum::new(&params, b);
                let value = if stable {
                    Cell::Num(s.evaluate(w, opts.method)?)
                } else {
                    Cell::Blank
                };
                cells.push(value);
                cells.push(Cell::Text(opts.method.to_string()));
                if opts.oracle {
                    cells.push(if stable {
                        s.oracle(w).map(Cell::Num).unwrap_or(Cell::Blank)
                    } else {
                        Cell::Blank
                    });
                }
            }
            Output::Peaks => match (&report.peaks, stable) {
                (Some(p), true) => cells.extend([
                    Cell::Num(p.omega_plus / wm),
                    Cell::Num(p.omega_minus / wm),
                    Cell::Num(p.gamma_plus / wm),
                    Cell::Num(p.gamma_minus / wm),
                    Cell::Bool(p.resolved),
                ]),
                _ => cells.extend(std::iter::repeat_n(Cell::Blank, 5)),
            },
            Output::PhotonNumber => cells.push(num(b.intensity)),
            Output::EffectiveCoupling => {
                cells.push(num(report.effective_coupling));
                cells.push(if stable {
                    Cell::Bool(report.threshold)
                } else {
                    Cell::Blank
                });
            }
        }
    }
    if spec.outputs != [Output::Stability] {
        cells.push(Cell::Bool(stable));
    }
    Ok(cells)
}

pub fn run_sweep(base: &Config, spec: &SweepSpec, opts: &SweepOptions) -> Result<Table> {
    spec.validate()?;
    let grid = spec.grid();

    // Operating points shared by many frequencies are solved once.
    let configs: Vec<Config> = grid
        .iter()
        .map(|v| point_config(base, spec, v))
        .collect::<Result<_>>()?;
    let mut unique: Vec<Config> = Vec::new();
    let mut index: HashMap<[u64; 3], usize> = HashMap::new();
    let slots: Vec<usize> = configs
        .iter()
        .map(|c| {
            let key = [
                c.power_mw.to_bits(),
                c.g_q_ratio.to_bits(),
                c.detuning_over_omega_m.to_bits(),
            ];
            *index.entry(key).or_insert_with(|| {
                unique.push(*c);
                unique.len() - 1
            })
        })
        .collect();
    let reports: Vec<PointReport> = unique.par_iter().map(evaluate).collect::<Result<_>>()?;

    let rows: Vec<Vec<Cell>> = grid
        .par_iter()
        .zip(slots.par_iter())
        .map(|(values, &slot)| row(spec, opts, values, &reports[slot]))
        .collect::<Result<_>>()?;
    Ok(Table {
        header: header(spec, opts),
        rows,
    })
}
