use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Why a candidate root of the steady-state polynomial was not kept as a branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RejectReason {
    Complex,
    Negative,
    SingularSpring,
    Residual,
    Duplicate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RejectedRoot {
    /// Candidate intra-cavity photon number.
    pub intensity: Complex64,
    pub reason: RejectReason,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("pump power must be non-negative, got {0} W")]
    NegativePower(f64),

    #[error("no physical steady state ({} candidate roots rejected)", rejected.len())]
    NoSteadyState { rejected: Vec<RejectedRoot> },

    #[error("response matrix is singular at omega = {omega} rad/s")]
    SingularSystem { omega: f64 },

    #[error("leading coefficient of the quartic vanishes")]
    DegenerateQuartic,

    #[error("quartic roots do not form two mirror pairs: {roots:?}")]
    RootClassification { roots: [Complex64; 4] },

    #[error("approximate peak formula gives an imaginary frequency (omega^2 = {omega_sq})")]
    ImaginaryFrequency { omega_sq: f64 },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
