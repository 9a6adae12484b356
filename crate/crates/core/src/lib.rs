//! Relativistic blackbody radiation.
//!
//! The rest-frame spectral distribution ρ(ω) = ħω³/(2πc)³ coth(ħω/2k_BT),
//! including its zero-point part, and what an observer moving with velocity β
//! relative to the radiation sees: Doppler shift and aberration of each photon
//! mode, the boosted density ρ′(ω′, k̂′), the direction-dependent effective
//! temperature T/(γ(1 + k̂′·β)) and its Legendre multipoles.
//!
//! T is always the temperature in the radiation rest frame. It is never
//! transformed.
//!
//! The transformation identities are checked numerically: energy densities by
//! quadrature and by correlation-tensor assembly, and the change-of-variables
//! identity by a weighted Monte Carlo histogram.

pub mod checks;
pub mod error;
pub mod kinematics;
pub mod montecarlo;
pub mod photon;
pub mod quadrature;
pub mod radiometry;
pub mod spectrum;
pub mod units;
pub mod vec3;
pub mod velocity;

pub use error::{Error, Result};
pub use kinematics::{
    aberrate, boost_mode, doppler, field_boost, inverse_boost_mode, FieldPair, ModeTransformResult,
};
pub use montecarlo::{run_identity_check, sample_rest_mode, McConfig, McReport};
pub use photon::PhotonMode;
pub use quadrature::{integrate_semi_infinite, QuadResult, QuadratureConfig};
pub use radiometry::{
    correlation_coincidence, energy_density_moving_correlation, energy_density_moving_spectral,
    energy_density_rest, CorrelationCoincidence, EnergyDensityReport, EnergyMethod,
};
pub use spectrum::{
    effective_temperature, rho_moving, rho_moving_pullback, rho_rest, temperature_multipoles,
    MultipoleCoefficients, SpectralComponent, SpectralDensity,
};
pub use units::{thermal_wavenumber, RestTemperature, UnitMode, UnitSystem};
pub use vec3::Vec3;
pub use velocity::{make_boost, BoostVelocity};
