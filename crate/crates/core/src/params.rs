//! Physical parameters, drive settings and noise bookkeeping.
//!
//! Every frequency stored here is angular (rad/s). Constructors taking
//! ordinary frequencies (Hz) multiply by 2π once, on the way in.

use serde::{Deserialize, Serialize};

use crate::constants::{C, HBAR, KB, TWO_PI};
use crate::error::{Error, Result};

/// Fixed constants of the cavity + mechanical oscillator.
///
/// The quadratic coupling is held only as a ratio to the linear one; the
/// absolute value is derived on demand by [`SystemParams::g_q`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    kappa: f64,
    omega_m: f64,
    gamma_m: f64,
    mass: f64,
    g_l: f64,
    g_q_ratio: f64,
    omega_p: f64,
    temperature: f64,
}

fn require(name: &'static str, value: f64, ok: bool, reason: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason,
        })
    }
}

impl SystemParams {
    /// Build from angular quantities (rad/s), mass in kg and temperature in K.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        kappa: f64,
        omega_m: f64,
        gamma_m: f64,
        mass: f64,
        g_l: f64,
        g_q_ratio: f64,
        omega_p: f64,
        temperature: f64,
    ) -> Result<Self> {
        require("kappa", kappa, kappa > 0.0, "must be positive")?;
        require("omega_m", omega_m, omega_m > 0.0, "must be positive")?;
        require("gamma_m", gamma_m, gamma_m > 0.0, "must be positive")?;
        require("mass", mass, mass > 0.0, "must be positive")?;
        require("g_l", g_l, true, "must be finite")?;
        require("g_q_ratio", g_q_ratio, true, "must be finite")?;
        require("omega_p", omega_p, omega_p > 0.0, "must be positive")?;
        require(
            "temperature",
            temperature,
            temperature >= 0.0,
            "must be non-negative",
        )?;
        let params = Self {
            kappa,
            omega_m,
            gamma_m,
            mass,
            g_l,
            g_q_ratio,
            omega_p,
            temperature,
        };
        if !params.is_resolved_sideband() {
            log::warn!(
                "omega_m ({omega_m:.4e} rad/s) <= kappa ({kappa:.4e} rad/s): outside the resolved-sideband regime"
            );
        }
        Ok(params)
    }

    /// Build from ordinary frequencies in Hz and a pump wavelength in nm.
    #[allow(clippy::too_many_arguments)]
    pub fn from_hz(
        kappa_hz: f64,
        omega_m_hz: f64,
        gamma_m_hz: f64,
        mass_kg: f64,
        g_l_hz: f64,
        g_q_ratio: f64,
        wavelength_nm: f64,
        temperature_k: f64,
    ) -> Result<Self> {
        require(
            "wavelength_nm",
            wavelength_nm,
            wavelength_nm > 0.0,
            "must be positive",
        )?;
        Self::new(
            TWO_PI * kappa_hz,
            TWO_PI * omega_m_hz,
            TWO_PI * gamma_m_hz,
            mass_kg,
            TWO_PI * g_l_hz,
            g_q_ratio,
            TWO_PI * C / (wavelength_nm * 1e-9),
            temperature_k,
        )
    }

    /// Membrane-in-the-middle operating point: κ/2π = 215 kHz,
    /// ω_m/2π = 947 kHz, γ_m/2π = 141.34 Hz, m = 145 ng, g_l/2π = 3.95 Hz,
    /// λ = 1064 nm, T = 300 mK, no quadratic coupling.
    pub fn reference() -> Self {
        Self::from_hz(215e3, 947e3, 141.34, 145e-12, 3.95, 0.0, 1064.0, 0.3)
            .expect("reference parameters are valid")
    }

    pub fn with_g_q_ratio(self, g_q_ratio: f64) -> Result<Self> {
        Self::new(
            self.kappa,
            self.omega_m,
            self.gamma_m,
            self.mass,
            self.g_l,
            g_q_ratio,
            self.omega_p,
            self.temperature,
        )
    }

    pub fn with_g_l(self, g_l: f64) -> Result<Self> {
        Self::new(
            self.kappa,
            self.omega_m,
            self.gamma_m,
            self.mass,
            g_l,
            self.g_q_ratio,
            self.omega_p,
            self.temperature,
        )
    }

    pub fn with_temperature(self, temperature: f64) -> Result<Self> {
        Self::new(
            self.kappa,
            self.omega_m,
            self.gamma_m,
            self.mass,
            self.g_l,
            self.g_q_ratio,
            self.omega_p,
            temperature,
        )
    }

    /// Cavity amplitude decay rate κ (rad/s).
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Bare mechanical frequency ω_m (rad/s).
    pub fn omega_m(&self) -> f64 {
        self.omega_m
    }

    /// Mechanical damping rate γ_m (rad/s).
    pub fn gamma_m(&self) -> f64 {
        self.gamma_m
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Linear single-photon coupling g_l (rad/s).
    pub fn g_l(&self) -> f64 {
        self.g_l
    }

    pub fn g_q_ratio(&self) -> f64 {
        self.g_q_ratio
    }

    /// Quadratic coupling g_q = (g_q/g_l)·g_l (rad/s).
    pub fn g_q(&self) -> f64 {
        self.g_q_ratio * self.g_l
    }

    /// Pump angular frequency ω_p (rad/s).
    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn kappa_hz(&self) -> f64 {
        self.kappa / TWO_PI
    }

    pub fn omega_m_hz(&self) -> f64 {
        self.omega_m / TWO_PI
    }

    pub fn gamma_m_hz(&self) -> f64 {
        self.gamma_m / TWO_PI
    }

    pub fn g_l_hz(&self) -> f64 {
        self.g_l / TWO_PI
    }

    pub fn wavelength_nm(&self) -> f64 {
        TWO_PI * C / self.omega_p * 1e9
    }

    /// Bare spring constant K = m ω_m² (N/m).
    pub fn spring_constant(&self) -> f64 {
        self.mass * self.omega_m * self.omega_m
    }

    pub fn is_resolved_sideband(&self) -> bool {
        self.omega_m > self.kappa
    }
}

/// Operating point of the pump laser.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveConfig {
    /// Input power (W).
    pub power: f64,
    /// Cavity detuning Δ = ω_c − ω_p (rad/s).
    pub detuning: f64,
}

impl DriveConfig {
    pub fn new(power: f64, detuning: f64) -> Result<Self> {
        if !(power >= 0.0) || !power.is_finite() {
            return Err(Error::NegativePower(power));
        }
        require("detuning", detuning, true, "must be finite")?;
        Ok(Self { power, detuning })
    }

    /// Power in mW, detuning in units of the bare mechanical frequency.
    pub fn from_mw(
        params: &SystemParams,
        power_mw: f64,
        detuning_over_omega_m: f64,
    ) -> Result<Self> {
        Self::new(power_mw * 1e-3, detuning_over_omega_m * params.omega_m())
    }

    pub fn power_mw(&self) -> f64 {
        self.power * 1e3
    }
}

/// Pump amplitude ε = sqrt(2κ𝒫/(ħω_p)) in s⁻¹.
pub fn drive_amplitude(params: &SystemParams, drive: &DriveConfig) -> Result<f64> {
    if !(drive.power >= 0.0) {
        return Err(Error::NegativePower(drive.power));
    }
    Ok((2.0 * params.kappa() * drive.power / (HBAR * params.omega_p())).sqrt())
}

/// Bose–Einstein occupation of the optical bath at the pump frequency.
///
/// Returns exactly 0 at T = 0 and whenever ħω/k_BT exceeds the range where
/// `exp` is finite.
pub fn thermal_photon_number(params: &SystemParams) -> f64 {
    bose_einstein(params.omega_p(), params.temperature())
}

fn bose_einstein(omega: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega / (KB * temperature);
    if x > 700.0 {
        0.0
    } else {
        1.0 / x.exp_m1()
    }
}

/// Argument convention of the hyperbolic cotangent in the Brownian noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CothConvention {
    /// coth(ħω / 2k_BT), the equilibrium fluctuation-dissipation form.
    #[default]
    Half,
    /// coth(ħω / k_BT).
    Full,
}

/// Bath statistics for the optical input noise and the Brownian force.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Mean thermal photon number of the optical bath.
    pub n_a: f64,
    /// k_BT/(ħω_m); diagnostics only.
    pub n_m_proxy: f64,
    pub coth_argument_convention: CothConvention,
    temperature: f64,
}

impl NoiseModel {
    pub fn new(params: &SystemParams, convention: CothConvention) -> Self {
        Self {
            n_a: thermal_photon_number(params),
            n_m_proxy: KB * params.temperature() / (HBAR * params.omega_m()),
            coth_argument_convention: convention,
            temperature: params.temperature(),
        }
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn with_convention(self, convention: CothConvention) -> Self {
        Self {
            coth_argument_convention: convention,
            ..self
        }
    }

    /// ω·coth(ħω / c·k_BT) with c = 2 (HALF) or 1 (FULL).
    ///
    /// Even in ω. Tends to c·k_BT/ħ at ω = 0 and to |ω| at T = 0.
    pub fn thermal_factor(&self, omega: f64) -> f64 {
        let c = match self.coth_argument_convention {
            CothConvention::Half => 2.0,
            CothConvention::Full => 1.0,
        };
        if self.temperature <= 0.0 {
            return omega.abs();
        }
        let scale = c * KB * self.temperature / HBAR;
        let x = omega / scale;
        if x.abs() < 1e-8 {
            // ω coth(ω/s) = s (1 + x²/3 + ...)
            scale * (1.0 + x * x / 3.0)
        } else {
            omega / x.tanh()
        }
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self::new(&SystemParams::reference(), CothConvention::Half)
    }
}

/// JSON configuration: system constants in Hz plus one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub kappa_hz: f64,
    pub omega_m_hz: f64,
    pub gamma_m_hz: f64,
    pub mass_kg: f64,
    pub g_l_hz: f64,
    pub g_q_ratio: f64,
    pub wavelength_nm: f64,
    pub temperature_k: f64,
    pub power_mw: f64,
    pub detuning_over_omega_m: f64,
}

impl Config {
    pub const KEYS: [&'static str; 10] = [
        "kappa_hz",
        "omega_m_hz",
        "gamma_m_hz",
        "mass_kg",
        "g_l_hz",
        "g_q_ratio",
        "wavelength_nm",
        "temperature_k",
        "power_mw",
        "detuning_over_omega_m",
    ];

    /// The bundled reference configuration (`data/paper.json`).
    pub fn reference() -> Self {
        Self::from_json(include_str!("../data/paper.json")).expect("bundled config parses")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.system_params()?;
        config.drive()?;
        Ok(config)
    }

    /// Replace one field by name. Unknown keys are rejected with the list of
    /// valid ones.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = match key {
            "kappa_hz" => &mut self.kappa_hz,
            "omega_m_hz" => &mut self.omega_m_hz,
            "gamma_m_hz" => &mut self.gamma_m_hz,
            "mass_kg" => &mut self.mass_kg,
            "g_l_hz" => &mut self.g_l_hz,
            "g_q_ratio" => &mut self.g_q_ratio,
            "wavelength_nm" => &mut self.wavelength_nm,
            "temperature_k" => &mut self.temperature_k,
            "power_mw" => &mut self.power_mw,
            "detuning_over_omega_m" => &mut self.detuning_over_omega_m,
            _ => {
                return Err(Error::Config(format!(
                    "unknown key `{key}`; valid keys are: {}",
                    Self::KEYS.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }

    pub fn system_params(&self) -> Result<SystemParams> {
        SystemParams::from_hz(
            self.kappa_hz,
            self.omega_m_hz,
            self.gamma_m_hz,
            self.mass_kg,
            self.g_l_hz,
            self.g_q_ratio,
            self.wavelength_nm,
            self.temperature_k,
        )
    }

    pub fn drive(&self) -> Result<DriveConfig> {
        let params = self.system_params()?;
        DriveConfig::from_mw(&params, self.power_mw, self.detuning_over_omega_m)
    }
}
