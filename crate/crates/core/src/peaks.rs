//! Normal-mode splitting: peak positions and widths from the zeros of D(ω).
//!
//! D(ω) has real even-degree and imaginary odd-degree coefficients, so its
//! zeros are symmetric under ω → −ω̄. They come in two mirror pairs
//! (±ω_± − iΓ_±/2), one per normal mode. The sum of the imaginary parts over
//! all four zeros is fixed by the ω³ coefficient: Γ₊ + Γ₋ = 2κ + γ_m.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::poly::{complex_roots, eval_complex};
use crate::spectrum::SpectrumResult;
use crate::steady_state::{effective_coupling, SteadyStateBranch};

/// Pairing mismatch |r_i + r̄_j| tolerated, relative to the largest root.
const PAIR_TOL: f64 = 1e-6;

/// Two normal modes extracted from the zeros of D(ω).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NmsPeaks {
    /// Upper mode frequency (rad/s), ≥ `omega_minus`.
    pub omega_plus: f64,
    pub omega_minus: f64,
    /// Full width of the upper mode: |sum of the imaginary parts of its root
    /// pair| (rad/s).
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    /// ω₊ − ω₋ > (Γ₊ + Γ₋)/2
    pub resolved: bool,
    pub raw_roots: [Complex64; 4],
}

impl NmsPeaks {
    pub fn separation(&self) -> f64 {
        self.omega_plus - self.omega_minus
    }
}

/// Coefficients of D(ω), ascending powers of ω.
pub fn d_coefficients(params: &SystemParams, branch: &SteadyStateBranch) -> [Complex64; 5] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let k = params.kappa();
    let opt = [
        c(k * k + branch.delta_eff.powi(2), 0.0),
        c(0.0, -2.0 * k),
        c(-1.0, 0.0),
    ];
    let mech = [
        c(-params.omega_m() * branch.omega_m_eff, 0.0),
        c(0.0, params.gamma_m()),
        c(1.0, 0.0),
    ];
    let mut out = [c(0.0, 0.0); 5];
    for (i, a) in opt.iter().enumerate() {
        for (j, b) in mech.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out[0] += 2.0 * branch.g_eff.powi(2) * branch.intensity * branch.delta_eff * params.omega_m();
    out
}

/// The four roots of c₀ + c₁z + c₂z² + c₃z³ + c₄z⁴, sorted by (Re, Im).
pub fn quartic_roots(coeffs: [Complex64; 5]) -> Result<[Complex64; 4]> {
    if coeffs[4].norm() == 0.0 {
        return Err(Error::DegenerateQuartic);
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / coeffs[4]).collect();
    if monic.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::DegenerateQuartic);
    }
    // z = s·y with s bounding the root moduli keeps the companion matrix O(1)
    let s = (0..4)
        .map(|k| monic[k].norm().powf(1.0 / (4 - k) as f64))
        .fold(0.0f64, f64::max);
    let s = if s > 0.0 { s } else { 1.0 };
    let scaled: Vec<Complex64> = monic
        .iter()
        .enumerate()
        .map(|(k, c)| c / s.powi(4 - k as i32))
        .collect();

    let mut roots: Vec<Complex64> = complex_roots(&scaled).into_iter().map(|y| y * s).collect();
    // Newton polish on the original (monic) polynomial
    let deriv: Vec<Complex64> = (1..5).map(|k| monic[k] * k as f64).collect();
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let f = eval_complex(&monic, *r);
            let df = eval_complex(&deriv, *r);
            if df.norm() == 0.0 {
                break;
            }
            let next = *r - f / df;
            if eval_complex(&monic, next).norm() < f.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok([roots[0], roots[1], roots[2], roots[3]])
}

/// Exact normal-mode frequencies and widths of a branch.
pub fn exact_peaks(params: &SystemParams, branch: &SteadyStateBranch) -> Result<NmsPeaks> {
    let roots = quartic_roots(d_coefficients(params, branch))?;
    classify(roots)
}

fn classify(roots: [Complex64; 4]) -> Result<NmsPeaks> {
    // Mirror pairs satisfy r_j = −r_i*. An overdamped mode shows up as two
    // roots on the imaginary axis, each its own mirror; pair those together.
    let mismatch = |i: usize, j: usize| {
        (roots[i] + roots[j].conj())
            .norm()
            .min(roots[i].re.abs() + roots[j].re.abs())
    };
    let pairings = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    let (best, worst) = pairings
        .iter()
        .map(|p| (p, mismatch(p[0].0, p[0].1).max(mismatch(p[1].0, p[1].1))))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let scale = roots.iter().fold(0.0f64, |m, r| m.max(r.norm()));
    if worst > PAIR_TOL * scale {
        return Err(Error::RootClassification { roots });
    }
    let mut modes: Vec<(f64, f64)> = best
        .iter()
        .map(|&(i, j)| {
            (
                0.5 * (roots[i].re - roots[j].re).abs(),
                (roots[i].im + roots[j].im).abs(),
            )
        })
        .collect();
    modes.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let (omega_minus, gamma_minus) = modes[0];
    let (omega_plus, gamma_plus) = modes[1];
    Ok(NmsPeaks {
        omega_plus,
        omega_minus,
        gamma_plus,
        gamma_minus,
        resolved: omega_plus - omega_minus > 0.5 * (gamma_plus + gamma_minus),
        raw_roots: roots,
    })
}

/// Peak positions (ω₊, ω₋) from the weak-damping closed form
/// ω±² = ½(ω_a² + ω_b²) ± ½√((ω_a² − ω_b²)² + 8ω_m I G̃² Δ̃),
/// ω_a² = κ² + Δ̃², ω_b² = ω_m ω̃_m.
pub fn approx_peaks(params: &SystemParams, branch: &SteadyStateBranch) -> Result<(f64, f64)> {
    let gm = params.gamma_m();
    if params.kappa() < 10.0 * gm || branch.delta_eff.abs() < 10.0 * gm {
        log::warn!("weak-damping peak formula used outside κ, Δ̃ ≫ γ_m");
    }
    let wa2 = params.kappa().powi(2) + branch.delta_eff.powi(2);
    let wb2 = params.omega_m() * branch.omega_m_eff;
    let disc = (wa2 - wb2).powi(2)
        + 8.0 * params.omega_m() * branch.intensity * branch.g_eff.powi(2) * branch.delta_eff;
    if disc < 0.0 {
        return Err(Error::ImaginaryFrequency { omega_sq: disc });
    }
    let plus = 0.5 * (wa2 + wb2) + 0.5 * disc.sqrt();
    let minus = 0.5 * (wa2 + wb2) - 0.5 * disc.sqrt();
    if minus < 0.0 {
        return Err(Error::ImaginaryFrequency { omega_sq: minus });
    }
    Ok((plus.sqrt(), minus.sqrt()))
}

/// G̃|a_s| > κ + γ_m/2
pub fn nms_threshold(params: &SystemParams, branch: &SteadyStateBranch) -> bool {
    effective_coupling(branch) > params.kappa() + 0.5 * params.gamma_m()
}

/// Interior local maxima of a sampled spectrum, as (ω, S) pairs.
pub fn local_maxima(spectrum: &SpectrumResult) -> Vec<(f64, f64)> {
    let s = &spectrum.s_xx;
    (1..s.len().saturating_sub(1))
        .filter(|&i| s[i] > s[i - 1] && s[i] >= s[i + 1])
        .map(|i| (spectrum.frequencies[i], s[i]))
        .collect()
}

/// min S / max S over the sampled points in [lo, hi]. Close to 1 when the
/// doublet has merged, small when a deep valley separates two peaks.
pub fn valley_to_peak(spectrum: &SpectrumResult, lo: f64, hi: f64) -> Option<f64> {
    let inside: Vec<f64> = spectrum
        .frequencies
        .iter()
        .zip(&spectrum.s_xx)
        .filter(|(w, _)| **w >= lo && **w <= hi)
        .map(|(_, s)| *s)
        .collect();
    if inside.is_empty() {
        return None;
    }
    let min = inside.iter().copied().fold(f64::INFINITY, f64::min);
    let max = inside.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Some(min / max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::DriveConfig;
    use crate::steady_state::solve_steady_states;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn from_roots(roots: &[Complex64]) -> [Complex64; 5] {
        let mut coeffs = vec![c(1.0, 0.0)];
        for r in roots {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (i, a) in coeffs.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            coeffs = next;
        }
        [coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]]
    }

    #[test]
    fn biquadratic_roots() {
        // (ω² − 1)(ω² − 4) = ω⁴ − 5ω² + 4
        let r = quartic_roots([
            c(4.0, 0.0),
            c(0.0, 0.0),
            c(-5.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
        ])
        .unwrap();
        for (g, w) in r.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((g - c(w, 0.0)).norm() < 1e-12, "{g}");
        }
    }

    #[test]
    fn roots_by_construction() {
        let want = [c(1.0, 1.0), c(1.0, -1.0), c(0.0, -2.0), c(3.0, 0.0)];
        let coeffs = from_roots(&want);
        let got = quartic_roots(coeffs).unwrap();
        let mut want = want.to_vec();
        want.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-10, "{g} vs {w}");
        }
        let max = got.iter().fold(0.0f64, |m, r| m.max(r.norm()));
        for r in got {
            assert!(eval_complex(&coeffs, r).norm() / max.powi(4) < 1e-9);
        }
    }

    #[test]
    fn degenerate_leading_coefficient() {
        let z = c(0.0, 0.0);
        assert!(matches!(
            quartic_roots([c(1.0, 0.0), c(1.0, 0.0), z, z, z]),
            Err(Error::DegenerateQuartic)
        ));
        assert!(matches!(
            quartic_roots([c(1e300, 0.0), c(1.0, 0.0), z, z, c(1e-300, 0.0)]),
            Err(Error::DegenerateQuartic)
        ));
    }

    #[test]
    fn unpaired_roots_are_a_classification_error() {
        let roots = [c(-3.0, -1.0), c(-1.0, -1.0), c(2.0, -1.0), c(5.0, -1.0)];
        assert!(matches!(
            classify(roots),
            Err(Error::RootClassification { .. })
        ));
    }

    #[test]
    fn decoupled_modes_are_optical_and_mechanical() {
        let p = SystemParams::reference().with_g_l(0.0).unwrap();
        let d = DriveConfig::from_mw(&p, 5.0, 1.3).unwrap();
        let b = solve_steady_states(&p, &d).unwrap()[0];
        assert_eq!(b.g_eff, 0.0);
        let peaks = exact_peaks(&p, &b).unwrap();
        let wd = (p.omega_m().powi(2) - p.gamma_m().powi(2) / 4.0).sqrt();
        let tol = 1e-9 * p.omega_m();
        assert!((peaks.omega_plus - b.delta_eff).abs() < tol);
        assert!((peaks.gamma_plus - 2.0 * p.kappa()).abs() < tol);
        assert!((peaks.omega_minus - wd).abs() < tol);
        // each mechanical root sits γ_m/2 below the axis
        assert!((peaks.gamma_minus - p.gamma_m()).abs() < tol);
        for r in peaks.raw_roots {
            assert!(r.im < 0.0);
        }
        assert!(!nms_threshold(&p, &b));
        let (wp, wm) = approx_peaks(&p, &b).unwrap();
        let wa = (p.kappa().powi(2) + b.delta_eff.powi(2)).sqrt();
        assert!((wp - wa.max(p.omega_m())).abs() < 1e-9 * wp);
        assert!((wm - wa.min(p.omega_m())).abs() < 1e-9 * wp);
    }

    #[test]
    fn zero_drive_has_no_splitting_above_threshold() {
        let p = SystemParams::reference();
        let d = DriveConfig::from_mw(&p, 0.0, 1.0).unwrap();
        let b = solve_steady_states(&p, &d).unwrap()[0];
        assert!(!nms_threshold(&p, &b));
    }

    #[test]
    fn local_maxima_and_valley() {
        let r = SpectrumResult {
            frequencies: vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0],
            s_xx: vec![0.0, 2.0, 1.0, 4.0, 3.0, 0.0],
            method: crate::spectrum::SpectrumMethod::AnalyticCorrected,
        };
        assert_eq!(local_maxima(&r), vec![(1.0, 2.0), (3.0, 4.0)]);
        assert_eq!(valley_to_peak(&r, 1.0, 3.0), Some(0.25));
        assert_eq!(valley_to_peak(&r, 10.0, 11.0), None);
    }
}
