//! Mean-field and linear-response model of a driven optical cavity coupled
//! to a mechanical oscillator through both linear (∝ x) and quadratic
//! (∝ x²) dispersive coupling.
//!
//! The pipeline is: [`params`] → [`steady_state`] (self-consistent branches)
//! → [`dynamics`] (drift matrix, stability) → [`spectrum`] (position noise)
//! and [`peaks`] (normal-mode splitting).

pub mod constants;
pub mod dynamics;
pub mod error;
pub mod params;
pub mod peaks;
pub mod poly;
pub mod spectrum;
pub mod steady_state;

pub use dynamics::{build_drift_matrix, routh_hurwitz, DriftMatrix, StabilityReport};
pub use error::{Error, Result};
pub use params::{
    drive_amplitude, thermal_photon_number, Config, CothConvention, DriveConfig, NoiseModel,
    SystemParams,
};
pub use peaks::{approx_peaks, exact_peaks, nms_threshold, quartic_roots, NmsPeaks};
pub use spectrum::{
    s_xx_analytic, s_xx_oracle, transfer_coefficients, Spectrum, SpectrumMethod, SpectrumResult,
    TransferCoefficients,
};
pub use steady_state::{
    effective_coupling, operating_branch, solve_steady_states, steady_state_polynomial,
    SteadyStateBranch,
};
