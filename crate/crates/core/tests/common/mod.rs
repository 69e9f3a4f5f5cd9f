#![allow(dead_code)]

use optomech_core::{solve_steady_states, DriveConfig, SteadyStateBranch, SystemParams};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

pub fn at(power_mw: f64, ratio: f64, detuning: f64) -> (SystemParams, DriveConfig) {
    let p = SystemParams::reference().with_g_q_ratio(ratio).unwrap();
    let d = DriveConfig::from_mw(&p, power_mw, detuning).unwrap();
    (p, d)
}

pub fn operating(power_mw: f64, ratio: f64) -> (SystemParams, SteadyStateBranch) {
    let (p, d) = at(power_mw, ratio, 1.0);
    (p, solve_steady_states(&p, &d).unwrap()[0])
}

/// Reference constants with power in (0, 12] mW, g_q/g_l in ±2e-5 and
/// detuning in the given range (units of ω_m).
pub fn random_point(rng: &mut ChaCha8Rng, detuning: (f64, f64)) -> (SystemParams, DriveConfig) {
    let power = rng.gen_range(1e-3..=12.0);
    let ratio = rng.gen_range(-2e-5..=2e-5);
    let det = rng.gen_range(detuning.0..=detuning.1);
    at(power, ratio, det)
}

/// Stable branches drawn from random operating points.
pub fn random_stable_branches(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> Vec<(SystemParams, SteadyStateBranch)> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (p, d) = random_point(rng, (0.3, 1.7));
        for b in solve_steady_states(&p, &d).unwrap() {
            if b.stable && out.len() < n {
                out.push((p, b));
            }
        }
    }
    out
}
