//! Mirror position noise spectrum S_xx(ω).
//!
//! Three independent routes are provided and checked against each other:
//!
//! * the closed form in terms of D(ω), Δ̃, G̃ and I,
//! * assembly from the transfer coefficients D, X_a, X_a†, X_ξ and the bath
//!   correlations,
//! * direct solution of (−iω − A) u = ν per noise channel.
//!
//! The Fourier convention is d/dt → −iω, which makes the uncoupled mirror a
//! Lorentzian ω_m ξ / (ω_m² − ω² − iγ_m ω).
//!
//! Spectra are symmetrized, S(ω) = S(−ω), in units of (dimensionless
//! position)² per rad/s.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::build_drift_matrix;
use crate::error::{Error, Result};
use crate::params::{CothConvention, NoiseModel, SystemParams};
use crate::steady_state::SteadyStateBranch;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpectrumMethod {
    /// Closed form with |D(ω)|², coth(ħω/2k_BT) and the −4ω²Δ̃² term.
    AnalyticCorrected,
    /// Historical closed form: |D(ω)| unsquared, coth(ħω/k_BT) and −4ω²Δ̃.
    /// Kept for comparison plots only; it is not a valid spectrum.
    AnalyticUncorrected,
    TransferAssembly,
    MatrixOracle,
}

impl SpectrumMethod {
    pub const ALL: [Self; 4] = [
        Self::AnalyticCorrected,
        Self::AnalyticUncorrected,
        Self::TransferAssembly,
        Self::MatrixOracle,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::AnalyticCorrected => "ANALYTIC_CORRECTED",
            Self::AnalyticUncorrected => "ANALYTIC_UNCORRECTED",
            Self::TransferAssembly => "TRANSFER_ASSEMBLY",
            Self::MatrixOracle => "MATRIX_ORACLE",
        }
    }
}

impl std::fmt::Display for SpectrumMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SpectrumMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|m| m.as_str()).collect();
                Error::Config(format!(
                    "unknown spectrum method `{s}`; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Frequency-domain response coefficients, δx = (X_a a_in + X_a† a_in† − X_ξ ξ)/D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferCoefficients {
    pub d_omega: Complex64,
    pub x_a: Complex64,
    pub x_a_dag: Complex64,
    pub x_xi: Complex64,
}

/// Response of δx to each noise input, from the 4×4 linear solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelResponse {
    pub a_in: Complex64,
    pub a_in_dag: Complex64,
    pub xi: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub frequencies: Vec<f64>,
    pub s_xx: Vec<f64>,
    pub method: SpectrumMethod,
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Grid used for doublet plots: 4001 points over [0.5, 1.5]·ω_m.
pub fn nms_grid(params: &SystemParams) -> Vec<f64> {
    let wm = params.omega_m();
    uniform_grid(0.5 * wm, 1.5 * wm, 4001)
}

/// D(ω) = ((κ − iω)² + Δ̃²)(ω² + iγ_mω − ω_mω̃_m) + 2G̃²IΔ̃ω_m
pub fn d_of_omega(params: &SystemParams, branch: &SteadyStateBranch, omega: f64) -> Complex64 {
    let i = Complex64::i();
    let k = Complex64::new(params.kappa(), -omega);
    let opt = k * k + branch.delta_eff.powi(2);
    let mech = omega * omega + i * params.gamma_m() * omega - params.omega_m() * branch.omega_m_eff;
    opt * mech + 2.0 * branch.g_eff.powi(2) * branch.intensity * branch.delta_eff * params.omega_m()
}

fn x_a(params: &SystemParams, branch: &SteadyStateBranch, omega: f64) -> Complex64 {
    (2.0 * params.kappa()).sqrt()
        * params.omega_m()
        * branch.g_eff
        * branch.a_s.conj()
        * Complex64::new(params.kappa(), -omega - branch.delta_eff)
}

pub fn transfer_coefficients(
    params: &SystemParams,
    branch: &SteadyStateBranch,
    omega: f64,
) -> TransferCoefficients {
    let k = Complex64::new(params.kappa(), -omega);
    TransferCoefficients {
        d_omega: d_of_omega(params, branch, omega),
        x_a: x_a(params, branch, omega),
        x_a_dag: x_a(params, branch, -omega).conj(),
        x_xi: params.omega_m() * (k * k + branch.delta_eff.powi(2)),
    }
}

/// Spectrum evaluator bound to one branch and one noise model.
#[derive(Debug, Clone, Copy)]
pub struct Spectrum<'a> {
    params: &'a SystemParams,
    branch: &'a SteadyStateBranch,
    noise: NoiseModel,
}

impl<'a> Spectrum<'a> {
    pub fn new(params: &'a SystemParams, branch: &'a SteadyStateBranch) -> Self {
        Self {
            params,
            branch,
            noise: NoiseModel::new(params, CothConvention::Half),
        }
    }

    pub fn with_noise(mut self, noise: NoiseModel) -> Self {
        self.noise = noise;
        self
    }

    pub fn noise(&self) -> &NoiseModel {
        &self.noise
    }

    pub fn transfer(&self, omega: f64) -> TransferCoefficients {
        transfer_coefficients(self.params, self.branch, omega)
    }

    /// Symmetrized Brownian force spectrum, (γ_m/ω_m)·ω coth(ħω/2k_BT).
    fn brownian_symmetric(&self, omega: f64) -> f64 {
        self.params.gamma_m() / self.params.omega_m() * self.noise.thermal_factor(omega)
    }

    pub fn analytic(&self, omega: f64) -> f64 {
        let p = self.params;
        let b = self.branch;
        let k2 = p.kappa().powi(2);
        let d2 = b.delta_eff.powi(2);
        let w2 = omega * omega;
        let sum = k2 + w2 + d2;
        let rad = 2.0
            * b.g_eff.powi(2)
            * b.intensity
            * p.kappa()
            * p.omega_m()
            * sum
            * (2.0 * self.noise.n_a + 1.0);
        let thermal = p.gamma_m() * self.noise.thermal_factor(omega) * (sum * sum - 4.0 * w2 * d2);
        p.omega_m() / d_of_omega(p, b, omega).norm_sqr() * (rad + thermal)
    }

    /// The uncorrected closed form. Can disagree with every other method by
    /// orders of magnitude and is never used for analysis.
    pub fn analytic_uncorrected(&self, omega: f64) -> f64 {
        let p = self.params;
        let b = self.branch;
        let full = self.noise.with_convention(CothConvention::Full);
        let sum = p.kappa().powi(2) + omega * omega + b.delta_eff.powi(2);
        let rad = 2.0 * b.g_eff.powi(2) * b.intensity * p.kappa() * p.omega_m() * sum;
        let thermal = p.gamma_m()
            * full.thermal_factor(omega)
            * (sum * sum - 4.0 * omega * omega * b.delta_eff);
        p.omega_m() / d_of_omega(p, b, omega).norm() * (rad + thermal)
    }

    pub fn assembly(&self, omega: f64) -> f64 {
        let t = self.transfer(omega);
        let rad = 0.5 * (t.x_a.norm_sqr() + t.x_a_dag.norm_sqr()) * (2.0 * self.noise.n_a + 1.0);
        let thermal = t.x_xi.norm_sqr() * self.brownian_symmetric(omega);
        (rad + thermal) / t.d_omega.norm_sqr()
    }

    /// Solve (−iω − A) u = ν for each noise input and read off δx.
    pub fn channel_response(&self, omega: f64) -> Result<ChannelResponse> {
        let a = build_drift_matrix(self.params, self.branch)
            .a
            .map(|x| Complex64::new(x, 0.0));
        let m = Matrix4::from_diagonal_element(Complex64::new(0.0, -omega)) - a;
        let lu = m.lu();
        let zero = Complex64::new(0.0, 0.0);
        let sk = self.params.kappa().sqrt();
        // √(2κ) δX_in = √κ (a_in + a_in†),  √(2κ) δY_in = −i√κ (a_in − a_in†)
        let inputs = [
            Vector4::new(
                zero,
                zero,
                Complex64::new(sk, 0.0),
                Complex64::new(0.0, -sk),
            ),
            Vector4::new(zero, zero, Complex64::new(sk, 0.0), Complex64::new(0.0, sk)),
            Vector4::new(zero, Complex64::new(1.0, 0.0), zero, zero),
        ];
        let mut out = [zero; 3];
        for (slot, rhs) in out.iter_mut().zip(inputs) {
            let u = lu.solve(&rhs).ok_or(Error::SingularSystem { omega })?;
            if !u[0].re.is_finite() || !u[0].im.is_finite() {
                return Err(Error::SingularSystem { omega });
            }
            *slot = u[0];
        }
        Ok(ChannelResponse {
            a_in: out[0],
            a_in_dag: out[1],
            xi: out[2],
        })
    }

    /// Brute-force spectrum from the channel responses at ±ω and the raw
    /// (unsymmetrized) bath correlations.
    pub fn oracle(&self, omega: f64) -> Result<f64> {
        let pos = self.channel_response(omega)?;
        let neg = self.channel_response(-omega)?;
        let n = self.noise.n_a;
        let gm_over_wm = self.params.gamma_m() / self.params.omega_m();
        // ⟨ξ(ω)ξ(ω')⟩ = 2π (γ_m/ω_m) ω [coth(ħω/2k_BT) + 1] δ(ω+ω')
        let xi_psd = |w: f64| gm_over_wm * (self.noise.thermal_factor(w) + w);
        let ordered = |r: &ChannelResponse, s: &ChannelResponse, w: f64| {
            r.a_in * s.a_in_dag * (n + 1.0) + r.a_in_dag * s.a_in * n + r.xi * s.xi * xi_psd(w)
        };
        let total = ordered(&pos, &neg, omega) + ordered(&neg, &pos, -omega);
        Ok(0.5 * total.re)
    }

    pub fn evaluate(&self, omega: f64, method: SpectrumMethod) -> Result<f64> {
        Ok(match method {
            SpectrumMethod::AnalyticCorrected => self.analytic(omega),
            SpectrumMethod::AnalyticUncorrected => self.analytic_uncorrected(omega),
            SpectrumMethod::TransferAssembly => self.assembly(omega),
            SpectrumMethod::MatrixOracle => self.oracle(omega)?,
        })
    }

    /// Evaluate on a grid in parallel; output order follows `frequencies`.
    pub fn sample(&self, frequencies: &[f64], method: SpectrumMethod) -> Result<SpectrumResult> {
        let s_xx = frequencies
            .par_iter()
            .map(|&w| self.evaluate(w, method))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectrumResult {
            frequencies: frequencies.to_vec(),
            s_xx,
            method,
        })
    }
}

pub fn s_xx_analytic(params: &SystemParams, branch: &SteadyStateBranch, omega: f64) -> f64 {
    Spectrum::new(params, branch).analytic(omega)
}

pub fn s_xx_oracle(params: &SystemParams, branch: &SteadyStateBranch, omega: f64) -> Result<f64> {
    Spectrum::new(params, branch).oracle(omega)
}
