//! Self-consistent mean-field steady states.
//!
//! The mean values obey
//!
//! ```text
//! x_s = -g_l I / (ω_m + 2 g_q I),   p_s = 0,
//! a_s = ε / (κ + i Δ̃),              Δ̃ = Δ + g_l x_s + g_q x_s²,
//! ```
//!
//! with I = |a_s|². Eliminating x_s leaves the scalar condition
//! f(I) = I (κ² + Δ̃(I)²) − ε² = 0. Multiplying through by (ω_m + 2 g_q I)⁴
//! turns it into a polynomial of degree at most five, whose real roots in
//! [0, ε²/κ²] are the branches.

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics;
use crate::error::{Error, RejectReason, RejectedRoot, Result};
use crate::params::{drive_amplitude, DriveConfig, SystemParams};
use crate::poly::Polynomial;

/// Relative imaginary part below which a companion eigenvalue counts as real.
const REAL_ROOT_TOL: f64 = 1e-8;
/// Branches with |ω_m + 2 g_q I| below this fraction of ω_m are discarded.
const SPRING_TOL: f64 = 1e-9;
/// Maximum relative residual |f(I)|/ε² accepted after polishing.
const RESIDUAL_TOL: f64 = 1e-10;

/// One self-consistent steady state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteadyStateBranch {
    pub x_s: f64,
    pub p_s: f64,
    pub a_s: Complex64,
    /// I = |a_s|², mean intra-cavity photon number.
    pub intensity: f64,
    /// Δ̃ = Δ + g_l x_s + g_q x_s² (rad/s).
    pub delta_eff: f64,
    /// ω̃_m = ω_m + 2 g_q I (rad/s).
    pub omega_m_eff: f64,
    /// G̃ = g_l + 2 g_q x_s (rad/s).
    pub g_eff: f64,
    /// K̃/K = ω̃_m/ω_m.
    pub spring_ratio: f64,
    pub stable: bool,
}

impl SteadyStateBranch {
    /// Evaluate every derived quantity at photon number `intensity`.
    /// `stable` is left false; see [`solve_steady_states`].
    pub fn at_intensity(
        params: &SystemParams,
        drive: &DriveConfig,
        eps: f64,
        intensity: f64,
    ) -> Self {
        let g_l = params.g_l();
        let g_q = params.g_q();
        let omega_m_eff = params.omega_m() + 2.0 * g_q * intensity;
        let x_s = if intensity == 0.0 {
            0.0
        } else {
            -g_l * intensity / omega_m_eff
        };
        let delta_eff = drive.detuning + g_l * x_s + g_q * x_s * x_s;
        let a_s = Complex64::new(eps, 0.0) / Complex64::new(params.kappa(), delta_eff);
        Self {
            x_s,
            p_s: 0.0,
            a_s,
            intensity,
            delta_eff,
            omega_m_eff,
            g_eff: g_l + 2.0 * g_q * x_s,
            spring_ratio: omega_m_eff / params.omega_m(),
            stable: false,
        }
    }

    /// Field amplitude |a_s| = sqrt(I).
    pub fn amplitude(&self) -> f64 {
        self.a_s.norm()
    }
}

/// P(I) = I·(κ² w⁴ + N²) − ε² w⁴ with w = ω_m + 2 g_q I and N = Δ̃·w².
///
/// P(I) = f(I)·w(I)⁴, so every physical steady state is a real root in
/// [0, ε²/κ²]. With g_q = 0 the quintic drops to the usual bistability cubic.
pub fn steady_state_polynomial(params: &SystemParams, drive: &DriveConfig) -> Result<Polynomial> {
    let eps = drive_amplitude(params, drive)?;
    let g_l = params.g_l();
    let g_q = params.g_q();
    let i = Polynomial::x();
    let w = Polynomial::new(vec![params.omega_m(), 2.0 * g_q]);
    let w2 = w.mul(&w);
    let w4 = w2.mul(&w2);
    // Δ̃ w² = Δ w² − g_l² I w + g_q g_l² I²
    let n = w2
        .scale(drive.detuning)
        .sub(&i.mul(&w).scale(g_l * g_l))
        .add(&i.mul(&i).scale(g_q * g_l * g_l));
    let bracket = w4.scale(params.kappa().powi(2)).add(&n.mul(&n));
    Ok(i.mul(&bracket).sub(&w4.scale(eps * eps)))
}

/// f(I) = I (κ² + Δ̃²) − ε² and its derivative.
fn balance(params: &SystemParams, detuning: f64, eps: f64, intensity: f64) -> (f64, f64) {
    let g_l = params.g_l();
    let g_q = params.g_q();
    let w = params.omega_m() + 2.0 * g_q * intensity;
    let x = -g_l * intensity / w;
    let delta = detuning + g_l * x + g_q * x * x;
    let dx = -g_l * params.omega_m() / (w * w);
    let ddelta = (g_l + 2.0 * g_q * x) * dx;
    let kd = params.kappa().powi(2) + delta * delta;
    (
        intensity * kd - eps * eps,
        kd + 2.0 * intensity * delta * ddelta,
    )
}

fn polish(params: &SystemParams, detuning: f64, eps: f64, mut intensity: f64, i_max: f64) -> f64 {
    for _ in 0..100 {
        let (f, df) = balance(params, detuning, eps, intensity);
        if df == 0.0 || !df.is_finite() {
            break;
        }
        let next = (intensity - f / df).clamp(0.0, i_max);
        let step = (next - intensity).abs();
        intensity = next;
        if step <= 4.0 * f64::EPSILON * intensity.abs() {
            break;
        }
    }
    intensity
}

/// All physical steady states at this operating point, ascending in I, each
/// with its stability verdict attached.
pub fn solve_steady_states(
    params: &SystemParams,
    drive: &DriveConfig,
) -> Result<Vec<SteadyStateBranch>> {
    let eps = drive_amplitude(params, drive)?;
    if eps == 0.0 {
        let mut b = SteadyStateBranch::at_intensity(params, drive, 0.0, 0.0);
        b.stable = dynamics::routh_hurwitz(params, &b).eig_stable;
        return Ok(vec![b]);
    }

    // Work in u = I / I_max so that the physical window is [0, 1].
    let i_max = eps * eps / params.kappa().powi(2);
    let poly = steady_state_polynomial(params, drive)?;
    let scaled = poly.rescaled(i_max);
    let norm = scaled.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let scaled = scaled.scale(1.0 / norm).truncated(1e-13);

    let mut rejected = Vec::new();
    let mut found: Vec<f64> = Vec::new();
    for root in scaled.roots() {
        let candidate = root * i_max;
        let reject = |reason| RejectedRoot {
            intensity: candidate,
            reason,
        };
        if root.im.abs() > REAL_ROOT_TOL * (1.0 + root.norm()) {
            rejected.push(reject(RejectReason::Complex));
            continue;
        }
        if root.re < -REAL_ROOT_TOL {
            rejected.push(reject(RejectReason::Negative));
            continue;
        }
        let intensity = polish(
            params,
            drive.detuning,
            eps,
            root.re.clamp(0.0, 1.0) * i_max,
            i_max,
        );
        let w = params.omega_m() + 2.0 * params.g_q() * intensity;
        if w.abs() < SPRING_TOL * params.omega_m() {
            rejected.push(reject(RejectReason::SingularSpring));
            continue;
        }
        let (f, _) = balance(params, drive.detuning, eps, intensity);
        if !(f.abs() <= RESIDUAL_TOL * eps * eps) {
            rejected.push(reject(RejectReason::Residual));
            continue;
        }
        if found
            .iter()
            .any(|&i| (i - intensity).abs() <= 1e-9 * i.abs().max(intensity.abs()))
        {
            rejected.push(reject(RejectReason::Duplicate));
            continue;
        }
        found.push(intensity);
    }
    if found.is_empty() {
        return Err(Error::NoSteadyState { rejected });
    }
    if !rejected.is_empty() {
        log::debug!("steady-state roots rejected: {rejected:?}");
    }
    found.sort_by(f64::total_cmp);
    Ok(found
        .into_iter()
        .map(|i| {
            let mut b = SteadyStateBranch::at_intensity(params, drive, eps, i);
            b.stable = dynamics::routh_hurwitz(params, &b).eig_stable;
            b
        })
        .collect())
}

/// The branch reached by ramping the pump up from zero: the lowest-intensity
/// one. Its `stable` flag tells whether that operating point survives.
pub fn operating_branch(branches: &[SteadyStateBranch]) -> Option<&SteadyStateBranch> {
    branches.first()
}

/// Many-photon coupling rate G̃·|a_s| (rad/s).
pub fn effective_coupling(branch: &SteadyStateBranch) -> f64 {
    branch.g_eff * branch.amplitude()
}
