mod common;

use common::{operating, random_stable_branches, rel};
use num_complex::Complex64;
use optomech_core::peaks::{d_coefficients, local_maxima};
use optomech_core::spectrum::{nms_grid, uniform_grid};
use optomech_core::{
    approx_peaks, build_drift_matrix, effective_coupling, exact_peaks, nms_threshold,
    solve_steady_states, DriveConfig, Spectrum, SpectrumMethod, SystemParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn width_sum_is_fixed_by_damping() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (p, b) in random_stable_branches(&mut rng, 300) {
        let peaks = exact_peaks(&p, &b).unwrap();
        let want = 2.0 * p.kappa() + p.gamma_m();
        assert!(rel(peaks.gamma_plus + peaks.gamma_minus, want) < 1e-8);
        let im_sum: f64 = peaks.raw_roots.iter().map(|r| r.im).sum();
        assert!(rel(im_sum.abs(), want) < 1e-8);
        assert!(peaks.omega_plus >= peaks.omega_minus);
    }
}

#[test]
fn zeros_of_d_are_rotated_eigenvalues() {
    // D(ω) ∝ det(−iω − A), so each zero is ω = iλ
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for (p, b) in random_stable_branches(&mut rng, 100) {
        let peaks = exact_peaks(&p, &b).unwrap();
        let ev = build_drift_matrix(&p, &b).eigenvalues();
        for lam in ev {
            let w = Complex64::i() * lam;
            let nearest = peaks
                .raw_roots
                .iter()
                .map(|r| (r - w).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(
                nearest < 1e-7 * p.omega_m(),
                "{w} not among {:?}",
                peaks.raw_roots
            );
        }
    }
}

#[test]
fn roots_back_substitute() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for (p, b) in random_stable_branches(&mut rng, 200) {
        let c = d_coefficients(&p, &b);
        let peaks = exact_peaks(&p, &b).unwrap();
        for r in peaks.raw_roots {
            let value = c
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, ci| acc * r + ci);
            let scale: f64 = c
                .iter()
                .enumerate()
                .map(|(k, ci)| ci.norm() * r.norm().powi(k as i32))
                .sum();
            assert!(value.norm() / scale < 1e-9);
        }
    }
}

#[test]
fn weak_damping_formula_converges_as_cavity_narrows() {
    // The closed form drops O(κ²) terms; the error must shrink with κ.
    let mut last = f64::INFINITY;
    for kappa_hz in [215e3, 68e3, 21.5e3, 6.8e3] {
        let p = SystemParams::from_hz(kappa_hz, 947e3, 141.34, 1.45e-10, 3.95, 0.0, 1064.0, 0.3)
            .unwrap();
        // keep the photon number fixed across κ
        let d = DriveConfig::from_mw(&p, 6.9 * 215e3 / kappa_hz, 1.0).unwrap();
        let b = solve_steady_states(&p, &d).unwrap()[0];
        let exact = exact_peaks(&p, &b).unwrap();
        let (wp, wm) = approx_peaks(&p, &b).unwrap();
        let err = rel(wp, exact.omega_plus).max(rel(wm, exact.omega_minus));
        assert!(err < 0.6 * last, "κ = {kappa_hz}: {err} after {last}");
        last = err;
    }
    assert!(last < 1e-3, "{last}");
}

#[test]
fn mechanical_frequency_sits_between_the_modes() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for (p, b) in random_stable_branches(&mut rng, 300) {
        if !nms_threshold(&p, &b) {
            continue;
        }
        let peaks = exact_peaks(&p, &b).unwrap();
        let wb = (p.omega_m() * b.omega_m_eff).sqrt();
        assert!(
            peaks.omega_minus < wb && wb < peaks.omega_plus,
            "{peaks:?} {wb}"
        );
    }
}

#[test]
fn spectral_maxima_sit_near_the_modes() {
    for (power, ratio) in [
        (6.9, -9e-6),
        (6.9, -4e-6),
        (10.7, 0.0),
        (10.7, -4e-6),
        (6.9, 0.0),
    ] {
        let (p, b) = operating(power, ratio);
        let peaks = exact_peaks(&p, &b).unwrap();
        assert!(peaks.resolved);
        let s = Spectrum::new(&p, &b)
            .sample(&nms_grid(&p), SpectrumMethod::AnalyticCorrected)
            .unwrap();
        let maxima = local_maxima(&s);
        assert!(!maxima.is_empty());
        for (w, _) in maxima {
            let near_plus = (w - peaks.omega_plus).abs() <= peaks.gamma_plus / 2.0;
            let near_minus = (w - peaks.omega_minus).abs() <= peaks.gamma_minus / 2.0;
            assert!(near_plus || near_minus, "max at {w} vs {peaks:?}");
        }
    }
}

#[test]
fn separation_scales_with_effective_coupling() {
    // Tune Δ so that Δ̃ = ω_m (= sqrt(ω_m ω̃_m) without quadratic coupling).
    let p = SystemParams::reference();
    let mut ratios = Vec::new();
    for power in uniform_grid(2.0, 8.0, 7) {
        let mut det = 1.0;
        let mut b = None;
        for _ in 0..100 {
            let d = DriveConfig::from_mw(&p, power, det).unwrap();
            let br = solve_steady_states(&p, &d).unwrap()[0];
            det += (p.omega_m() - br.delta_eff) / p.omega_m();
            b = Some(br);
        }
        let b = b.unwrap();
        assert!(rel(b.delta_eff, p.omega_m()) < 1e-9);
        let (wp, wm) = approx_peaks(&p, &b).unwrap();
        ratios.push((wp - wm) / effective_coupling(&b));
    }
    let first = ratios[0];
    for r in &ratios {
        assert!(rel(*r, first) < 0.05, "{ratios:?}");
    }
}

#[test]
fn threshold_is_false_without_light() {
    let p = SystemParams::reference();
    let d = DriveConfig::from_mw(&p, 0.0, 1.0).unwrap();
    let b = solve_steady_states(&p, &d).unwrap()[0];
    assert!(!nms_threshold(&p, &b));
    assert_eq!(effective_coupling(&b), 0.0);
}
