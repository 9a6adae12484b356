use thiserror::Error;

/// Errors raised by constructors and numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("boost speed |beta| = {magnitude} is not below 1")]
    Superluminal { magnitude: f64 },

    #[error("beta components must be finite")]
    NonFiniteVelocity,

    #[error("direction has norm {norm}, too far from 1 to renormalize")]
    NotUnitDirection { norm: f64 },

    #[error("frequency must be finite and non-negative, got {0}")]
    InvalidFrequency(f64),

    #[error("temperature must be finite and non-negative, got {0}")]
    InvalidTemperature(f64),

    #[error("temperature must be positive for {0}")]
    ZeroTemperature(&'static str),

    #[error("physical constant {name} must be finite and positive, got {value}")]
    InvalidConstant { name: &'static str, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "zero-point energy diverges as omega^4; supply a frequency cutoff to integrate the {0} component"
    )]
    MissingCutoff(&'static str),

    #[error("{0} is only defined for the thermal component")]
    ThermalOnly(&'static str),

    #[error("quadrature did not converge at depth {max_levels}: estimate {estimate}, error {error}")]
    NonConvergence {
        estimate: f64,
        error: f64,
        max_levels: u32,
    },

    #[error("integrand returned a non-finite value at {at}")]
    NonFiniteIntegrand { at: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
