use serde::Serialize;

use optomech_core::{
    effective_coupling, exact_peaks, nms_threshold, routh_hurwitz, solve_steady_states, Config,
    NmsPeaks, StabilityReport, SteadyStateBranch,
};

use crate::error::Result;

/// Everything computed at a single operating point. The operating branch is
/// the lowest-intensity steady state.
#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    pub config: Config,
    pub branches: Vec<SteadyStateBranch>,
    pub operating: SteadyStateBranch,
    pub stability: StabilityReport,
    /// Absent without light in the cavity or when the roots could not be
    /// classified.
    pub peaks: Option<NmsPeaks>,
    pub effective_coupling: f64,
    pub threshold: bool,
}

pub fn evaluate(config: &Config) -> Result<PointReport> {
    let params = config.system_params()?;
    let drive = config.drive()?;
    let branches = solve_steady_states(&params, &drive)?;
    let operating = branches[0];
    let stability = routh_hurwitz(&params, &operating);
    let peaks = if operating.intensity > 0.0 {
        exact_peaks(&params, &operating)
            .map_err(|e| log::warn!("peaks at {config:?}: {e}"))
            .ok()
    } else {
        None
    };
    Ok(PointReport {
        config: *config,
        branches,
        operating,
        stability,
        peaks,
        effective_coupling: effective_coupling(&operating),
        threshold: nms_threshold(&params, &operating),
    })
}
