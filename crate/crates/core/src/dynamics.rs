//! Linearized fluctuation dynamics around a steady state.
//!
//! Fluctuations u = (δx, δp, δX, δY) obey u̇ = A u + ν. The branch is stable
//! iff every eigenvalue of A has a negative real part. The Routh–Hurwitz
//! inequalities on the characteristic polynomial are evaluated alongside as
//! a second, algebraic verdict.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::SQRT_2;

use crate::params::SystemParams;
use crate::steady_state::SteadyStateBranch;

/// |Re λ| at or below this fraction of ω_m counts as marginal.
pub const MARGINAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix {
    pub a: Matrix4<f64>,
    /// X_s = (a_s + a_s*)/√2
    pub x_quadrature: f64,
    /// Y_s = (a_s − a_s*)/(i√2)
    pub y_quadrature: f64,
}

impl DriftMatrix {
    pub fn eigenvalues(&self) -> [Complex64; 4] {
        let ev = self.a.complex_eigenvalues();
        [ev[0], ev[1], ev[2], ev[3]]
    }
}

pub fn build_drift_matrix(params: &SystemParams, branch: &SteadyStateBranch) -> DriftMatrix {
    let xq = SQRT_2 * branch.a_s.re;
    let yq = SQRT_2 * branch.a_s.im;
    let g = branch.g_eff;
    let k = params.kappa();
    let d = branch.delta_eff;
    #[rustfmt::skip]
    let a = Matrix4::new(
        0.0,                 params.omega_m(),    0.0,     0.0,
        -branch.omega_m_eff, -params.gamma_m(),   -g * xq, -g * yq,
        g * yq,              0.0,                 -k,      d,
        -g * xq,             0.0,                 -d,      -k,
    );
    DriftMatrix {
        a,
        x_quadrature: xq,
        y_quadrature: yq,
    }
}

/// Monic characteristic polynomial det(λ − A) = λ⁴ + c₁λ³ + c₂λ² + c₃λ + c₄,
/// returned as `[1, c₁, c₂, c₃, c₄]`. c₂, c₃, c₄ are s₁, s₂, s₃ of the
/// Routh–Hurwitz table.
pub fn characteristic_polynomial(params: &SystemParams, branch: &SteadyStateBranch) -> [f64; 5] {
    let k = params.kappa();
    let gm = params.gamma_m();
    let wm = params.omega_m();
    let wt = branch.omega_m_eff;
    let d = branch.delta_eff;
    let opt = k * k + d * d;
    let quad_sq = 2.0 * branch.intensity;
    [
        1.0,
        2.0 * k + gm,
        opt + 2.0 * k * gm + wt * wm,
        opt * gm + 2.0 * k * wt * wm,
        opt * wt * wm - d * wm * branch.g_eff.powi(2) * quad_sq,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityReport {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub cond4: bool,
    pub cond5: bool,
    /// All five Routh–Hurwitz inequalities hold.
    pub rh_stable: bool,
    pub max_re_eigenvalue: f64,
    /// max Re λ < 0. This is the verdict used downstream.
    pub eig_stable: bool,
    /// |max Re λ| ≤ 1e-6 ω_m.
    pub marginal: bool,
}

pub fn routh_hurwitz(params: &SystemParams, branch: &SteadyStateBranch) -> StabilityReport {
    let [_, a1, s1, s2, s3] = characteristic_polynomial(params, branch);
    let cond4 = a1 * s1 > s2;
    let cond5 = s1 * s2 * a1 > s2 * s2 + a1 * a1 * s3;
    let rh_stable = s1 > 0.0 && s2 > 0.0 && s3 > 0.0 && cond4 && cond5;

    let max_re_eigenvalue = build_drift_matrix(params, branch)
        .eigenvalues()
        .iter()
        .map(|l| l.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let eig_stable = max_re_eigenvalue < 0.0;
    let marginal = max_re_eigenvalue.abs() <= MARGINAL_TOL * params.omega_m();
    if rh_stable != eig_stable {
        if marginal {
            log::debug!(
                "RH/eigenvalue disagreement at marginal point, max Re = {max_re_eigenvalue:e}"
            );
        } else {
            log::warn!("RH/eigenvalue disagreement, max Re = {max_re_eigenvalue:e}");
        }
    }
    StabilityReport {
        s1,
        s2,
        s3,
        cond4,
        cond5,
        rh_stable,
        max_re_eigenvalue,
        eig_stable,
        marginal,
    }
}
