//! WebAssembly bindings behind `www/index.html`.
//!
//! Every export returns a flat `Float64Array`. Layouts are given per function.
//! Temperatures and frequencies are in natural units.

use relbb::kinematics::boost_mode;
use relbb::photon::{direction_about, direction_with_cosine};
use relbb::spectrum::effective_temperature_cosine;
use relbb::{
    rho_moving, rho_rest, temperature_multipoles, BoostVelocity, PhotonMode, RestTemperature,
    SpectralComponent, UnitSystem,
};
use wasm_bindgen::prelude::*;

type Result<T> = std::result::Result<T, String>;

fn boost(beta: f64) -> Result<BoostVelocity> {
    BoostVelocity::along_z(beta).map_err(|e| e.to_string())
}

fn temperature(t: f64) -> Result<RestTemperature> {
    RestTemperature::new(t).map_err(|e| e.to_string())
}

fn component(thermal_only: bool) -> SpectralComponent {
    if thermal_only {
        SpectralComponent::Thermal
    } else {
        SpectralComponent::Total
    }
}

/// Rows of `[ω, ρ_rest(ω), ρ′(ω, μ′)]` on a linear grid over (0, ω_max].
pub fn spectrum_rows(
    temperature_: f64,
    beta: f64,
    mu_prime: f64,
    omega_max: f64,
    points: usize,
    thermal_only: bool,
) -> Result<Vec<f64>> {
    let t = temperature(temperature_)?;
    let v = boost(beta)?;
    if !(-1.0..=1.0).contains(&mu_prime) {
        return Err(format!("mu' must lie in [-1, 1], got {mu_prime}"));
    }
    if !(omega_max.is_finite() && omega_max > 0.0) || points == 0 {
        return Err("need omega_max > 0 and at least one point".into());
    }
    let u = UnitSystem::natural();
    let comp = component(thermal_only);
    let khat = direction_with_cosine(v.axis(), mu_prime);
    let mut out = Vec::with_capacity(3 * points);
    for i in 1..=points {
        let w = omega_max * i as f64 / points as f64;
        out.push(w);
        out.push(rho_rest(w, t, comp, &u).map_err(|e| e.to_string())?.0);
        out.push(rho_moving(w, khat, &v, t, comp, &u).map_err(|e| e.to_string())?.0);
    }
    Ok(out)
}

/// `[a_0, …, a_lmax]` followed by `points` rows of `[μ′, T_eff(μ′), Σ a_l P_l(μ′)]`.
pub fn anisotropy_rows(temperature_: f64, beta: f64, lmax: usize, points: usize) -> Result<Vec<f64>> {
    let t = temperature(temperature_)?;
    let v = boost(beta)?;
    if lmax > 64 || points < 2 {
        return Err("need lmax <= 64 and at least two map points".into());
    }
    let m = temperature_multipoles(&v, t, lmax);
    let mut out = m.a.clone();
    for i in 0..points {
        let mu = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
        out.extend([mu, effective_temperature_cosine(mu, &v, t), m.evaluate(mu)]);
    }
    Ok(out)
}

/// `[ω′, μ′, jac_freq, jac_solid_angle, k̂′x, k̂′y, k̂′z]` for a rest-frame mode.
pub fn boost_mode_record(beta: f64, omega: f64, mu: f64, phi: f64) -> Result<Vec<f64>> {
    let v = boost(beta)?;
    if !(-1.0..=1.0).contains(&mu) || !phi.is_finite() {
        return Err("need mu in [-1, 1] and finite phi".into());
    }
    let axis = v.axis();
    let mode = PhotonMode::new(omega, direction_about(axis, mu, phi)).map_err(|e| e.to_string())?;
    let r = boost_mode(&mode, &v);
    let k = r.mode_prime.khat();
    Ok(vec![
        r.mode_prime.omega(),
        k.dot(axis),
        r.jac_freq,
        r.jac_solid_angle,
        k.0[0],
        k.0[1],
        k.0[2],
    ])
}

#[wasm_bindgen]
pub fn spectrum(
    temperature: f64,
    beta: f64,
    mu_prime: f64,
    omega_max: f64,
    points: usize,
    thermal_only: bool,
) -> std::result::Result<Vec<f64>, JsError> {
    spectrum_rows(temperature, beta, mu_prime, omega_max, points, thermal_only).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn anisotropy(temperature: f64, beta: f64, lmax: usize, points: usize) -> std::result::Result<Vec<f64>, JsError> {
    anisotropy_rows(temperature, beta, lmax, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = boostMode)]
pub fn boost_mode_js(beta: f64, omega: f64, mu: f64, phi: f64) -> std::result::Result<Vec<f64>, JsError> {
    boost_mode_record(beta, omega, mu, phi).map_err(|e| JsError::new(&e))
}
