//! The three spectrum routes against each other, the channel identities of
//! the transfer coefficients and the uncoupled Brownian limit.

mod common;

use common::{operating, random_stable_branches, rel};
use nalgebra::Matrix4;
use num_complex::Complex64;
use optomech_core::spectrum::d_of_omega;
use optomech_core::{
    build_drift_matrix, solve_steady_states, transfer_coefficients, DriveConfig, Spectrum,
    SpectrumMethod, SystemParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn thermal_channel_identity() {
    // |X_ξ|² = ω_m² |(κ−iω)² + Δ̃²|² = ω_m² ((κ²+ω²+Δ̃²)² − 4ω²Δ̃²)
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let branches = random_stable_branches(&mut rng, 50);
    for k in 0..1000 {
        let (p, b) = &branches[k % branches.len()];
        let w = rng.gen_range(-3.0..3.0) * p.omega_m();
        let t = transfer_coefficients(p, b, w);
        let sum = p.kappa().powi(2) + w * w + b.delta_eff.powi(2);
        let want = p.omega_m().powi(2) * (sum * sum - 4.0 * w * w * b.delta_eff.powi(2));
        assert!(rel(t.x_xi.norm_sqr(), want) < 1e-12);
        // the linear-Δ̃ variant is far off
        let linear = p.omega_m().powi(2) * (sum * sum - 4.0 * w * w * b.delta_eff);
        if w.abs() > 0.1 * p.omega_m() {
            assert!(rel(t.x_xi.norm_sqr(), linear) > 1e-3);
        }
    }
}

#[test]
fn radiation_channel_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let branches = random_stable_branches(&mut rng, 50);
    for k in 0..1000 {
        let (p, b) = &branches[k % branches.len()];
        let w = rng.gen_range(-3.0..3.0) * p.omega_m();
        let t = transfer_coefficients(p, b, w);
        let m = transfer_coefficients(p, b, -w);
        let lhs = 0.5 * (t.x_a.norm_sqr() + m.x_a.norm_sqr());
        let rhs = 2.0
            * p.kappa()
            * p.omega_m().powi(2)
            * b.g_eff.powi(2)
            * b.intensity
            * (p.kappa().powi(2) + w * w + b.delta_eff.powi(2));
        assert!(rel(lhs, rhs) < 1e-12);
        assert_eq!(t.x_a_dag.norm_sqr(), m.x_a.norm_sqr());
    }
}

#[test]
fn d_is_minus_the_characteristic_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, b) in random_stable_branches(&mut rng, 100) {
        let a = build_drift_matrix(&p, &b).a.map(|x| Complex64::new(x, 0.0));
        for _ in 0..5 {
            let w = rng.gen_range(-2.0..2.0) * p.omega_m();
            let m = Matrix4::from_diagonal_element(Complex64::new(0.0, -w)) - a;
            let det = m.determinant();
            let d = d_of_omega(&p, &b, w);
            assert!(
                (d + det).norm() <= 1e-10 * d.norm().max(det.norm()),
                "{d} vs {det}"
            );
        }
    }
}

#[test]
fn three_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (p, b) in random_stable_branches(&mut rng, 200) {
        let w = rng.gen_range(0.0..2.0) * p.omega_m();
        let s = Spectrum::new(&p, &b);
        let analytic = s.analytic(w);
        let assembly = s.assembly(w);
        let oracle = s.oracle(w).unwrap();
        assert!(analytic > 0.0);
        assert!(rel(analytic, assembly) < 1e-8, "{analytic} vs {assembly}");
        assert!(rel(analytic, oracle) < 1e-8, "{analytic} vs {oracle}");
        assert_eq!(s.evaluate(w, SpectrumMethod::MatrixOracle).unwrap(), oracle);
    }
}

#[test]
fn brownian_channel_alone_matches_transfer_assembly() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, b) in random_stable_branches(&mut rng, 50) {
        let s = Spectrum::new(&p, &b);
        for _ in 0..4 {
            let w = rng.gen_range(-2.0..2.0) * p.omega_m();
            let r = s.channel_response(w).unwrap();
            let t = s.transfer(w);
            let want = t.x_xi.norm_sqr() / t.d_omega.norm_sqr();
            assert!(rel(r.xi.norm_sqr(), want) < 1e-9);
            let rad = 0.5 * (r.a_in.norm_sqr() + s.channel_response(-w).unwrap().a_in.norm_sqr());
            let rad_want = 0.5 * (t.x_a.norm_sqr() + t.x_a_dag.norm_sqr()) / t.d_omega.norm_sqr();
            assert!(rel(rad, rad_want) < 1e-9);
        }
    }
}

#[test]
fn symmetric_and_non_negative() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (p, b) in random_stable_branches(&mut rng, 40) {
        let s = Spectrum::new(&p, &b);
        for k in 0..50 {
            let w = k as f64 / 25.0 * p.omega_m();
            for m in [
                SpectrumMethod::AnalyticCorrected,
                SpectrumMethod::TransferAssembly,
                SpectrumMethod::MatrixOracle,
            ] {
                let v = s.evaluate(w, m).unwrap();
                assert!(v >= 0.0);
                assert!(rel(v, s.evaluate(-w, m).unwrap()) < 1e-9);
            }
        }
    }
}

#[test]
fn uncoupled_mirror_is_the_brownian_lorentzian() {
    let p = SystemParams::reference().with_g_l(0.0).unwrap();
    let d = DriveConfig::from_mw(&p, 6.9, 1.0).unwrap();
    let b = solve_steady_states(&p, &d).unwrap()[0];
    let s = Spectrum::new(&p, &b);
    let (wm, g) = (p.omega_m(), p.gamma_m());
    for k in 0..400 {
        let w = wm * (0.98 + 0.04 * k as f64 / 399.0);
        let chi = wm / Complex64::new(wm * wm - w * w, -g * w);
        let want = chi.norm_sqr() * g / wm * s.noise().thermal_factor(w);
        let oracle = s.oracle(w).unwrap();
        assert!(rel(s.analytic(w), oracle) < 1e-12);
        assert!(rel(oracle, want) < 1e-12);
    }
}

#[test]
fn uncorrected_form_disagrees() {
    let (p, b) = operating(6.9, -4e-6);
    let s = Spectrum::new(&p, &b);
    let w = p.omega_m();
    assert!(rel(s.analytic_uncorrected(w), s.oracle(w).unwrap()) > 0.5);
}
