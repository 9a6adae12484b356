//! Spectral energy density of blackbody radiation in the rest frame and as seen
//! by a moving observer.
//!
//! ρ(ω, k̂) is energy per unit volume, per unit angular frequency and per
//! steradian of propagation direction. In the rest frame
//!
//! ```text
//! ρ(ω) = ħω³/(2πc)³ · coth(ħω / 2k_BT)
//! ```
//!
//! which splits into a zero-point term ħω³/(2πc)³ and a thermal term
//! ħω³/(2πc)³ · 2/(exp(ħω/k_BT) − 1). An observer with velocity β sees, along
//! propagation direction k̂′, the same form with ω replaced by γ(1 + k̂′·β)ω′
//! inside the coth only. The zero-point term is therefore frame independent and
//! the thermal term is a Planck law at T/(γ(1 + k̂′·β)).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photon::unit_direction;
use crate::quadrature::{legendre, GaussLegendre};
use crate::units::{RestTemperature, UnitSystem};
use crate::vec3::Vec3;
use crate::velocity::BoostVelocity;

/// Above this value of ħω/k_BT the thermal term is returned as exactly zero.
pub const THERMAL_CUTOFF_ARG: f64 = 700.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralComponent {
    ZeroPoint,
    Thermal,
    Total,
}

impl SpectralComponent {
    pub fn name(self) -> &'static str {
        match self {
            SpectralComponent::ZeroPoint => "zero-point",
            SpectralComponent::Thermal => "thermal",
            SpectralComponent::Total => "total",
        }
    }
}

impl std::str::FromStr for SpectralComponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero-point" => Ok(SpectralComponent::ZeroPoint),
            "thermal" => Ok(SpectralComponent::Thermal),
            "total" => Ok(SpectralComponent::Total),
            other => Err(Error::InvalidConfig(format!("unknown spectral component '{other}'"))),
        }
    }
}

/// Energy / (volume · angular frequency · steradian).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct SpectralDensity(pub f64);

impl SpectralDensity {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// 2/(eˣ − 1) = coth(x/2) − 1, with the large-x tail flushed to zero.
fn thermal_occupation(x: f64) -> f64 {
    if x > THERMAL_CUTOFF_ARG {
        0.0
    } else {
        2.0 / x.exp_m1()
    }
}

/// ħω³/(2πc)³ times the requested part of coth(x/2). `x` is `None` at T = 0.
fn kernel(omega: f64, x: Option<f64>, comp: SpectralComponent, u: &UnitSystem) -> f64 {
    if omega == 0.0 {
        return 0.0;
    }
    let zero_point = u.spectral_prefactor() * omega * omega * omega;
    let thermal = || match x {
        None => 0.0,
        Some(x) => zero_point * thermal_occupation(x),
    };
    match comp {
        SpectralComponent::ZeroPoint => zero_point,
        SpectralComponent::Thermal => thermal(),
        SpectralComponent::Total => zero_point + thermal(),
    }
}

fn check_frequency(omega: f64) -> Result<()> {
    if omega.is_finite() && omega >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidFrequency(omega))
    }
}

/// Rest-frame spectral distribution, isotropic in k̂.
pub fn rho_rest(
    omega: f64,
    t: RestTemperature,
    comp: SpectralComponent,
    u: &UnitSystem,
) -> Result<SpectralDensity> {
    check_frequency(omega)?;
    let x = (!t.is_zero()).then(|| u.to_dimensionless(omega, t.value()));
    Ok(SpectralDensity(kernel(omega, x, comp, u)))
}

/// γ(1 + k̂′·β): ratio of rest-frame to observer-frame frequency along k̂′.
pub fn doppler_factor(khat_prime: Vec3, v: &BoostVelocity) -> f64 {
    if v.is_rest() {
        1.0
    } else {
        v.gamma() * (1.0 + khat_prime.dot(v.beta()))
    }
}

/// Observer-frame spectral distribution along propagation direction `khat_prime`.
pub fn rho_moving(
    omega_prime: f64,
    khat_prime: Vec3,
    v: &BoostVelocity,
    t: RestTemperature,
    comp: SpectralComponent,
    u: &UnitSystem,
) -> Result<SpectralDensity> {
    check_frequency(omega_prime)?;
    let khat_prime = unit_direction(khat_prime)?;
    let factor = doppler_factor(khat_prime, v);
    let x = (!t.is_zero()).then(|| u.to_dimensionless(factor * omega_prime, t.value()));
    Ok(SpectralDensity(kernel(omega_prime, x, comp, u)))
}

/// Observer-frame density built from the rest-frame one by the change of
/// variables ρ′(ω′, k̂′) = ρ(Dω′)/D³ with D = γ(1 + k̂′·β).
pub fn rho_moving_pullback(
    omega_prime: f64,
    khat_prime: Vec3,
    v: &BoostVelocity,
    t: RestTemperature,
    comp: SpectralComponent,
    u: &UnitSystem,
) -> Result<SpectralDensity> {
    check_frequency(omega_prime)?;
    let khat_prime = unit_direction(khat_prime)?;
    let factor = doppler_factor(khat_prime, v);
    let rest = rho_rest(factor * omega_prime, t, comp, u)?;
    Ok(SpectralDensity(rest.0 / (factor * factor * factor)))
}

/// T / (γ(1 + k̂′·β)), the rest-frame temperature whose thermal spectrum matches
/// the observer's thermal spectrum along `khat_prime`.
pub fn effective_temperature(
    khat_prime: Vec3,
    v: &BoostVelocity,
    t: RestTemperature,
) -> Result<f64> {
    let khat_prime = unit_direction(khat_prime)?;
    Ok(t.value() / doppler_factor(khat_prime, v))
}

/// T_eff as a function of μ′ = k̂′·v̂ alone.
pub fn effective_temperature_cosine(mu_prime: f64, v: &BoostVelocity, t: RestTemperature) -> f64 {
    if v.is_rest() {
        t.value()
    } else {
        t.value() / (v.gamma() * (1.0 + v.speed() * mu_prime))
    }
}

pub const MULTIPOLE_CONVENTION: &str =
    "T_eff(mu') = sum_l a_l P_l(mu'), mu' = khat'.vhat is the cosine of the photon propagation direction (not the observation direction) with the boost axis";

/// Legendre coefficients of T_eff(μ′).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultipoleCoefficients {
    pub l_max: usize,
    pub a: Vec<f64>,
    pub nodes: usize,
    pub convention: String,
}

/// a_l = (2l+1)/2 ∫ T_eff(μ′) P_l(μ′) dμ′ by Gauss–Legendre quadrature.
///
/// Odd coefficients follow the propagation-direction convention: a_1 < 0 for a
/// positive boost, because photons propagating against v̂ are hotter.
pub fn temperature_multipoles(
    v: &BoostVelocity,
    t: RestTemperature,
    l_max: usize,
) -> MultipoleCoefficients {
    let nodes = 128.max(l_max + 64);
    let mut a = vec![0.0; l_max + 1];
    if v.is_rest() {
        a[0] = t.value();
    } else {
        let rule = GaussLegendre::new(nodes);
        let samples: Vec<(f64, f64, f64)> = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&mu, &w)| (mu, w, effective_temperature_cosine(mu, v, t)))
            .collect();
        for (l, coeff) in a.iter_mut().enumerate() {
            let integral: f64 = samples
                .iter()
                .map(|&(mu, w, teff)| w * teff * legendre(l, mu))
                .sum();
            *coeff = 0.5 * (2 * l + 1) as f64 * integral;
        }
    }
    MultipoleCoefficients {
        l_max,
        a,
        nodes,
        convention: MULTIPOLE_CONVENTION.to_string(),
    }
}

impl MultipoleCoefficients {
    /// Σ a_l P_l(μ′).
    pub fn evaluate(&self, mu_prime: f64) -> f64 {
        self.a
            .iter()
            .enumerate()
            .map(|(l, a)| a * legendre(l, mu_prime))
            .sum()
    }
}
