//! Energy densities of the radiation field in the rest frame and in a moving
//! frame, computed by two independent routes.
//!
//! * Spectral quadrature: integrate the observer-frame thermal density over
//!   frequency and solid angle.
//! * Correlation assembly: build the coincidence-limit field correlation tensors
//!   ⟨E_j E_m⟩ and ⟨E_j B_m⟩ in the rest frame and contract them with the field
//!   boost to get ⟨E′²⟩ + ⟨B′²⟩.
//!
//! Only thermal parts are compared between frames. The zero-point integral
//! diverges as Λ⁴ and a fixed cutoff is not Lorentz covariant, so it is only
//! available in the rest frame behind an explicit cutoff.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_interval, integrate_semi_infinite, GaussLegendre, QuadratureConfig};
use crate::spectrum::{effective_temperature_cosine, rho_moving, rho_rest, SpectralComponent};
use crate::units::{thermal_wavenumber, RestTemperature, UnitSystem};
use crate::photon::direction_with_cosine;
use crate::vec3::Vec3;
use crate::velocity::BoostVelocity;

/// Gauss–Legendre nodes used for the polar angle integral over μ′.
pub const ANGULAR_NODES: usize = 96;

pub type Tensor3 = [[f64; 3]; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyMethod {
    SpectralQuadrature,
    CorrelationAssembly,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyDensityReport {
    pub w_rest: f64,
    pub w_moving: f64,
    pub method: EnergyMethod,
    pub ratio: f64,
}

impl EnergyDensityReport {
    fn new(w_rest: f64, w_moving: f64, method: EnergyMethod) -> Self {
        EnergyDensityReport {
            w_rest,
            w_moving,
            method,
            ratio: w_moving / w_rest,
        }
    }
}

/// Thermal parts of the equal-point, equal-time field correlations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationCoincidence {
    /// C_jj of ⟨E E⟩ (equal to that of ⟨B B⟩).
    pub elel_trace: f64,
    pub elel_tensor: Tensor3,
    /// ⟨E_j B_m⟩ symmetrized.
    pub elmag_tensor: Tensor3,
}

impl CorrelationCoincidence {
    /// e_ljm â_l C_jm of the electric-magnetic correlation.
    pub fn elmag_axial_trace(&self, axis: Vec3) -> f64 {
        let mut s = 0.0;
        for l in 0..3 {
            for j in 0..3 {
                for m in 0..3 {
                    s += levi_civita(l, j, m) * axis.0[l] * self.elmag_tensor[j][m];
                }
            }
        }
        s
    }
}

pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// π²(k_B T)⁴/(15ħ³c³).
pub fn stefan_boltzmann_energy_density(t: RestTemperature, u: &UnitSystem) -> f64 {
    let kt = u.k_b() * t.value();
    let hc = u.hbar() * u.c();
    PI * PI * kt.powi(4) / (15.0 * hc.powi(3))
}

/// ħΛ⁴/(8π²c³).
pub fn zero_point_energy_density(cutoff: f64, u: &UnitSystem) -> f64 {
    u.hbar() * cutoff.powi(4) / (8.0 * PI * PI * u.c().powi(3))
}

/// Density scale ħ s³/(2πc)³ for thermal frequency `s`; integrands are divided by
/// it so tolerances are dimensionless.
fn density_unit(scale: f64, u: &UnitSystem) -> f64 {
    u.spectral_prefactor() * scale * scale * scale
}

/// ∫₀^∞ dω ρ_thermal(ω) at rest temperature `t`, for a single direction.
fn thermal_frequency_integral(t: RestTemperature, cfg: &QuadratureConfig, u: &UnitSystem) -> Result<f64> {
    let Some(scale) = thermal_wavenumber(t, u) else {
        return Ok(0.0);
    };
    let unit = density_unit(scale, u);
    let r = integrate_semi_infinite(
        |x| rho_rest(x * scale, t, SpectralComponent::Thermal, u).map_or(f64::NAN, |d| d.0 / unit),
        1.0,
        cfg,
    )?;
    Ok(r.value * scale * unit)
}

/// W = ∫₀^∞ dω ∫ dΩ ρ(ω) in the rest frame.
///
/// The thermal component converges on its own. The zero-point and total
/// components need `cfg.omega_cutoff`, and are integrated up to it.
pub fn energy_density_rest(
    t: RestTemperature,
    comp: SpectralComponent,
    cfg: &QuadratureConfig,
    u: &UnitSystem,
) -> Result<f64> {
    cfg.validate()?;
    let four_pi = 4.0 * PI;
    match comp {
        SpectralComponent::Thermal => Ok(four_pi * thermal_frequency_integral(t, cfg, u)?),
        SpectralComponent::ZeroPoint | SpectralComponent::Total => {
            let cutoff = cfg.omega_cutoff.ok_or(Error::MissingCutoff(comp.name()))?;
            // The zero-point density is a cubic in ω; a 2-point rule is exact.
            let zero_point = GaussLegendre::new(2).integrate(0.0, cutoff, |w| {
                rho_rest(w, t, SpectralComponent::ZeroPoint, u).map_or(f64::NAN, |d| d.0)
            });
            let mut w = four_pi * zero_point;
            if comp == SpectralComponent::Total {
                if let Some(scale) = thermal_wavenumber(t, u) {
                    let unit = density_unit(scale, u);
                    let r = integrate_interval(
                        |x| rho_rest(x * scale, t, SpectralComponent::Thermal, u).map_or(f64::NAN, |d| d.0 / unit),
                        0.0,
                        cutoff / scale,
                        cfg,
                    )?;
                    w += four_pi * r.value * scale * unit;
                }
            }
            Ok(w)
        }
    }
}

/// W′ = ∫dω′∫dΩ′ ρ′_thermal(ω′, k̂′), with the azimuth done analytically and μ′ by
/// Gauss–Legendre. Each frequency integral is scaled by T_eff(μ′).
pub fn energy_density_moving_spectral(
    t: RestTemperature,
    v: &BoostVelocity,
    comp: SpectralComponent,
    cfg: &QuadratureConfig,
    u: &UnitSystem,
) -> Result<EnergyDensityReport> {
    if comp != SpectralComponent::Thermal {
        return Err(Error::ThermalOnly("moving-frame energy density"));
    }
    cfg.validate()?;
    let w_rest = energy_density_rest(t, SpectralComponent::Thermal, cfg, u)?;
    if t.is_zero() {
        return Ok(EnergyDensityReport::new(0.0, 0.0, EnergyMethod::SpectralQuadrature));
    }
    let axis = v.axis();
    let rule = GaussLegendre::new(ANGULAR_NODES);
    let mut polar = 0.0;
    for (&mu, &weight) in rule.nodes.iter().zip(&rule.weights) {
        let khat = direction_with_cosine(axis, mu);
        let t_eff = RestTemperature::new(effective_temperature_cosine(mu, v, t))?;
        let scale = thermal_wavenumber(t_eff, u).expect("T_eff > 0 when T > 0");
        let unit = density_unit(scale, u);
        let r = integrate_semi_infinite(
            |x| {
                rho_moving(x * scale, khat, v, t, SpectralComponent::Thermal, u)
                    .map_or(f64::NAN, |d| d.0 / unit)
            },
            1.0,
            cfg,
        )?;
        polar += weight * r.value * scale * unit;
    }
    let w_moving = 2.0 * PI * polar;
    Ok(EnergyDensityReport::new(w_rest, w_moving, EnergyMethod::SpectralQuadrature))
}

/// Closed-form angular moments over the unit sphere: ∫dΩ, ∫dΩ k̂_l, ∫dΩ k̂_j k̂_m.
fn angular_moments() -> (f64, [f64; 3], Tensor3) {
    let mut second = [[0.0; 3]; 3];
    for (j, row) in second.iter_mut().enumerate() {
        row[j] = 4.0 * PI / 3.0;
    }
    (4.0 * PI, [0.0; 3], second)
}

/// Thermal parts of C_jm^(el-el)(0,0) and C_jm^(el-mag)(0,0):
///
/// ```text
/// C_jm^(el-el)  = ħ/(4π²c³) ∫dω ω³ (coth − 1) ∫dΩ (δ_jm − k̂_j k̂_m)
/// C_jm^(el-mag) = ħ/(4π²c³) ∫dω ω³ (coth − 1) ∫dΩ e_jml k̂_l
/// ```
///
/// The frequency integral is numerical; the angular ones are closed form.
pub fn correlation_coincidence(
    t: RestTemperature,
    cfg: &QuadratureConfig,
    u: &UnitSystem,
) -> Result<CorrelationCoincidence> {
    cfg.validate()?;
    let scale = thermal_wavenumber(t, u).ok_or(Error::ZeroTemperature("correlation_coincidence"))?;
    // ∫dω ω³(coth − 1) = s⁴ ∫dx x³ · 2/(eˣ − 1)
    let r = integrate_semi_infinite(|x| 2.0 * x * x * x / x.exp_m1(), 1.0, cfg)?;
    let spectral = r.value * scale.powi(4);
    let pref = u.hbar() / (4.0 * PI * PI * u.c().powi(3)) * spectral;

    let (solid, first, second) = angular_moments();
    let mut elel = [[0.0; 3]; 3];
    let mut elmag = [[0.0; 3]; 3];
    for j in 0..3 {
        for m in 0..3 {
            let delta = if j == m { 1.0 } else { 0.0 };
            elel[j][m] = pref * (delta * solid - second[j][m]);
            elmag[j][m] = pref * (0..3).map(|l| levi_civita(j, m, l) * first[l]).sum::<f64>();
        }
    }
    let trace = elel[0][0] + elel[1][1] + elel[2][2];
    Ok(CorrelationCoincidence {
        elel_trace: trace,
        elel_tensor: elel,
        elmag_tensor: elmag,
    })
}

/// W′ from the rest-frame correlations and the field boost:
///
/// ```text
/// W′ = (1/4π){ C_jj + 2(γ²−1)[C_jj − v̂_j v̂_m C_jm] + 2γ² β_l e_ljm C_jm^(el-mag) }
/// ```
pub fn energy_density_moving_correlation(
    t: RestTemperature,
    v: &BoostVelocity,
    cfg: &QuadratureConfig,
    u: &UnitSystem,
) -> Result<EnergyDensityReport> {
    let c = correlation_coincidence(t, cfg, u)?;
    let w_rest = c.elel_trace / (4.0 * PI);
    let gamma2 = v.gamma() * v.gamma();
    let axis = v.axis();
    let mut longitudinal = 0.0;
    for j in 0..3 {
        for m in 0..3 {
            longitudinal += axis.0[j] * axis.0[m] * c.elel_tensor[j][m];
        }
    }
    let beta = v.beta();
    let mut cross = 0.0;
    for l in 0..3 {
        for j in 0..3 {
            for m in 0..3 {
                cross += beta.0[l] * levi_civita(l, j, m) * c.elmag_tensor[j][m];
            }
        }
    }
    let w_moving = (c.elel_trace
        + 2.0 * (gamma2 - 1.0) * (c.elel_trace - longitudinal)
        + 2.0 * gamma2 * cross)
        / (4.0 * PI);
    Ok(EnergyDensityReport::new(w_rest, w_moving, EnergyMethod::CorrelationAssembly))
}

/// γ²(1 + β²/3), the closed-form ratio W′/W of thermal energy densities.
pub fn moving_energy_ratio(v: &BoostVelocity) -> f64 {
    let b = v.speed();
    v.gamma() * v.gamma() * (1.0 + b * b / 3.0)
}
