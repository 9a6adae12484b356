//! The invariant suite behind `relbb selftest`.
//!
//! Each check measures a residual against a fixed limit. Random inputs come from
//! fixed seeds so every run measures the same residuals.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::kinematics::{boost_mode, doppler, field_boost, inverse_boost_mode, FieldPair};
use crate::montecarlo::{run_identity_check_threaded, McConfig};
use crate::photon::{direction_with_cosine, polar_direction, PhotonMode};
use crate::quadrature::QuadratureConfig;
use crate::radiometry::{
    energy_density_moving_correlation, energy_density_moving_spectral, energy_density_rest,
    moving_energy_ratio,
};
use crate::spectrum::{
    effective_temperature, rho_moving, rho_moving_pullback, rho_rest, temperature_multipoles,
    SpectralComponent,
};
use crate::units::{RestTemperature, UnitSystem};
use crate::vec3::Vec3;
use crate::velocity::{make_boost, BoostVelocity};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub measured: f64,
    pub limit: f64,
    /// How `measured` is compared with `limit`.
    pub relation: &'static str,
    pub passed: bool,
}

impl CheckOutcome {
    fn at_most(name: &'static str, measured: f64, limit: f64) -> Self {
        CheckOutcome {
            name,
            measured,
            limit,
            relation: "<=",
            passed: measured <= limit,
        }
    }

    fn below(name: &'static str, measured: f64, limit: f64) -> Self {
        CheckOutcome {
            name,
            measured,
            limit,
            relation: "<",
            passed: measured < limit,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Skip the N = 10⁶ Monte Carlo run.
    pub quick: bool,
    /// Worker threads for the Monte Carlo run.
    pub threads: usize,
    /// Perturb the zero-temperature densities by one part in 10⁶, simulating a
    /// broken kernel. Used to exercise the failure path.
    pub inject_fault: bool,
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

fn random_direction(rng: &mut ChaCha8Rng) -> Vec3 {
    let mu = 2.0 * rng.random::<f64>() - 1.0;
    polar_direction(mu, 2.0 * PI * rng.random::<f64>()).expect("mu in range")
}

fn random_boost(rng: &mut ChaCha8Rng, max_speed: f64) -> BoostVelocity {
    let speed = max_speed * rng.random::<f64>();
    make_boost(random_direction(rng) * speed).expect("|beta| < 1")
}

/// Fourth-order central difference.
fn five_point(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

fn temp(t: f64) -> RestTemperature {
    RestTemperature::new(t).expect("valid temperature")
}

/// Runs every invariant check and returns the outcomes in a fixed order.
pub fn run_checks(opts: &CheckOptions) -> Result<Vec<CheckOutcome>> {
    let u = UnitSystem::natural();
    let quad = QuadratureConfig::default();
    let mut out = Vec::new();

    // Zero-temperature invariance of the spectral distribution.
    {
        let mut worst: f64 = 0.0;
        let fault = if opts.inject_fault { 1.0 + 1e-6 } else { 1.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for beta in [0.0, 0.3, 0.9, 0.99] {
            let v = BoostVelocity::along_z(beta)?;
            for _ in 0..64 {
                let khat = random_direction(&mut rng);
                for i in 0..32 {
                    let omega = 10f64.powf(-3.0 + 6.0 * i as f64 / 31.0);
                    let m = rho_moving(omega, khat, &v, RestTemperature::ZERO, SpectralComponent::Total, &u)?.0;
                    let expected = u.hbar() * (omega / (2.0 * PI * u.c())).powi(3);
                    worst = worst.max(rel(m * fault, expected));
                }
            }
        }
        out.push(CheckOutcome::at_most("zero_temperature_invariance", worst, 1e-12));
    }

    // Explicit moving-frame density against the rest-frame pullback.
    {
        let mut worst: f64 = 0.0;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let v = random_boost(&mut rng, 0.99);
            let khat = random_direction(&mut rng);
            let omega = 20.0 * rng.random::<f64>();
            let t = temp(0.1 + 4.0 * rng.random::<f64>());
            for comp in [SpectralComponent::Total, SpectralComponent::Thermal] {
                let a = rho_moving(omega, khat, &v, t, comp, &u)?.0;
                let b = rho_moving_pullback(omega, khat, &v, t, comp, &u)?.0;
                worst = worst.max(rel(b, a));
            }
        }
        out.push(CheckOutcome::at_most("pullback_identity", worst, 1e-12));
    }

    // Boost then inverse boost recovers the mode.
    {
        let (mut worst_omega, mut worst_dir): (f64, f64) = (0.0, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100_000 {
            let v = random_boost(&mut rng, 0.99);
            let m = PhotonMode::new(10f64.powf(4.0 * rng.random::<f64>() - 2.0), random_direction(&mut rng))?;
            let back = inverse_boost_mode(&boost_mode(&m, &v).mode_prime, &v);
            worst_omega = worst_omega.max(rel(back.omega(), m.omega()));
            worst_dir = worst_dir.max(back.khat().max_abs_diff(m.khat()));
        }
        out.push(CheckOutcome::at_most("mode_round_trip_omega", worst_omega, 1e-12));
        out.push(CheckOutcome::at_most("mode_round_trip_direction", worst_dir, 1e-12));
    }

    // Stefan–Boltzmann value and T⁴ scaling.
    {
        let w1 = energy_density_rest(temp(1.0), SpectralComponent::Thermal, &quad, &u)?;
        out.push(CheckOutcome::at_most("stefan_boltzmann", rel(w1, PI * PI / 15.0), 1e-8));
        let mut worst: f64 = 0.0;
        for t in [0.5, 2.0, 4.0] {
            let w = energy_density_rest(temp(t), SpectralComponent::Thermal, &quad, &u)?;
            worst = worst.max(rel(w / t.powi(4), w1));
        }
        out.push(CheckOutcome::at_most("t4_scaling", worst, 1e-10));
    }

    // Moving-frame energy density by both routes.
    {
        let (mut worst_spec, mut worst_corr, mut worst_route): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for beta in [0.0, 0.1, 0.3, 0.6, 0.9] {
            let v = BoostVelocity::along_z(beta)?;
            let s = energy_density_moving_spectral(temp(1.0), &v, SpectralComponent::Thermal, &quad, &u)?;
            let c = energy_density_moving_correlation(temp(1.0), &v, &quad, &u)?;
            let expected = moving_energy_ratio(&v);
            worst_spec = worst_spec.max((s.ratio - expected).abs());
            worst_corr = worst_corr.max((c.ratio - expected).abs());
            worst_route = worst_route.max(rel(s.w_moving, c.w_moving));
        }
        out.push(CheckOutcome::at_most("moving_energy_ratio_spectral", worst_spec, 1e-8));
        out.push(CheckOutcome::at_most("moving_energy_ratio_correlation", worst_corr, 1e-8));
        out.push(CheckOutcome::at_most("energy_route_agreement", worst_route, 1e-8));
    }

    // Thermal part is a Planck law at T_eff; monopole closed form.
    {
        let mut worst: f64 = 0.0;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10_000 {
            let v = random_boost(&mut rng, 0.99);
            let khat = random_direction(&mut rng);
            let omega = 20.0 * rng.random::<f64>();
            let t = temp(0.1 + 4.0 * rng.random::<f64>());
            let t_eff = temp(effective_temperature(khat, &v, t)?);
            let a = rho_moving(omega, khat, &v, t, SpectralComponent::Thermal, &u)?.0;
            let b = rho_rest(omega, t_eff, SpectralComponent::Thermal, &u)?.0;
            worst = worst.max(rel(a, b));
        }
        out.push(CheckOutcome::at_most("effective_temperature_factorization", worst, 1e-12));

        let v = BoostVelocity::along_z(0.6)?;
        let a0 = temperature_multipoles(&v, temp(1.0), 0).a[0];
        out.push(CheckOutcome::at_most("monopole_closed_form", (a0 - 4.0 / 3.0 * 2f64.ln()).abs(), 1e-10));

        let beta = 1e-3;
        let a1 = temperature_multipoles(&BoostVelocity::along_z(beta)?, temp(1.0), 1).a[1];
        let sign_ok = if a1 < 0.0 { 0.0 } else { f64::INFINITY };
        out.push(CheckOutcome::at_most("dipole_small_beta", (a1.abs() - beta).abs() + sign_ok, 1e-9));
    }

    // Occupation number ρ/ω³ is invariant.
    {
        let mut worst: f64 = 0.0;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let v = random_boost(&mut rng, 0.99);
            let mp = PhotonMode::new(0.01 + 20.0 * rng.random::<f64>(), random_direction(&mut rng))?;
            let m = inverse_boost_mode(&mp, &v);
            let t = temp(0.1 + 4.0 * rng.random::<f64>());
            let lhs = rho_moving(mp.omega(), mp.khat(), &v, t, SpectralComponent::Total, &u)?.0 / mp.omega().powi(3);
            let rhs = rho_rest(m.omega(), t, SpectralComponent::Total, &u)?.0 / m.omega().powi(3);
            worst = worst.max(rel(lhs, rhs));
        }
        out.push(CheckOutcome::at_most("occupation_invariance", worst, 1e-12));
    }

    // Total = zero-point + thermal.
    {
        let mut worst: f64 = 0.0;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10_000 {
            let omega = 10f64.powf(6.0 * rng.random::<f64>() - 3.0);
            let t = temp(10f64.powf(4.0 * rng.random::<f64>() - 2.0));
            let total = rho_rest(omega, t, SpectralComponent::Total, &u)?.0;
            let parts = rho_rest(omega, t, SpectralComponent::ZeroPoint, &u)?.0
                + rho_rest(omega, t, SpectralComponent::Thermal, &u)?.0;
            worst = worst.max(rel(parts, total));
        }
        out.push(CheckOutcome::at_most("component_additivity", worst, 1e-13));
    }

    // Analytic Jacobians against central differences.
    {
        let (mut worst_freq, mut worst_solid): (f64, f64) = (0.0, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1_000 {
            let v = random_boost(&mut rng, 0.99);
            let axis = v.axis();
            let m = PhotonMode::new(0.1 + 10.0 * rng.random::<f64>(), random_direction(&mut rng))?;
            let r = boost_mode(&m, &v);

            let h = 1e-3 * m.omega();
            let up = doppler(&PhotonMode::new(m.omega() + h, m.khat())?, &v);
            let down = doppler(&PhotonMode::new(m.omega() - h, m.khat())?, &v);
            worst_freq = worst_freq.max((r.jac_freq * (up - down) / (2.0 * h) - 1.0).abs());

            let mu_p = r.mode_prime.khat().dot(axis).clamp(-1.0 + 1e-3, 1.0 - 1e-3);
            let h = (1e-3 * (1.0 + v.speed() * mu_p)).min(4e-4);
            let rest_cos = |c: f64| -> f64 {
                let k = direction_with_cosine(axis, c);
                inverse_boost_mode(&PhotonMode::from_parts(1.0, k), &v).khat().dot(axis)
            };
            let numeric = five_point(rest_cos, mu_p, h);
            let at = boost_mode(
                &inverse_boost_mode(&PhotonMode::from_parts(1.0, direction_with_cosine(axis, mu_p)), &v),
                &v,
            );
            worst_solid = worst_solid.max(rel(numeric, at.jac_solid_angle));
        }
        out.push(CheckOutcome::at_most("jacobian_frequency", worst_freq, 1e-8));
        out.push(CheckOutcome::at_most("jacobian_solid_angle", worst_solid, 1e-8));
    }

    // E² − B² and E·B survive the field boost.
    {
        let (mut worst_s, mut worst_p): (f64, f64) = (0.0, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..1_000 {
            let v = random_boost(&mut rng, 0.99);
            let mut comp = || 2.0 * rng.random::<f64>() - 1.0;
            let f = FieldPair::new(Vec3::new(comp(), comp(), comp()), Vec3::new(comp(), comp(), comp()));
            let g = field_boost(&f, &v);
            let scale = f.e.norm_sqr() + f.b.norm_sqr();
            worst_s = worst_s.max((g.scalar_invariant() - f.scalar_invariant()).abs() / scale);
            worst_p = worst_p.max((g.pseudoscalar_invariant() - f.pseudoscalar_invariant()).abs() / scale);
        }
        out.push(CheckOutcome::at_most("field_invariant_e2_minus_b2", worst_s, 1e-10));
        out.push(CheckOutcome::at_most("field_invariant_e_dot_b", worst_p, 1e-10));
    }

    if !opts.quick {
        let t = temp(1.0);
        let v = BoostVelocity::along_z(0.6)?;
        let cfg = McConfig::for_temperature(t, &u, 1_000_000, 42);
        let r = run_identity_check_threaded(t, &v, &cfg, &u, opts.threads.max(1))?;
        out.push(CheckOutcome::at_most("mc_chi2_per_dof_deviation", (r.chi2_per_dof - 1.0).abs(), 0.3));
        out.push(CheckOutcome::below("mc_max_abs_z", r.max_abs_z, 5.0));
        out.push(CheckOutcome::at_most("mc_energy_ratio_sigma", r.ratio_z().abs(), 3.0));
    }

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let out = run_checks(&CheckOptions { quick: true, ..Default::default() }).unwrap();
        for c in &out {
            assert!(c.passed, "{c:?}");
        }
        assert!(out.iter().all(|c| !c.name.starts_with("mc_")));
    }

    #[test]
    fn injected_fault_is_caught() {
        let out = run_checks(&CheckOptions { quick: true, inject_fault: true, ..Default::default() }).unwrap();
        let zt = out.iter().find(|c| c.name == "zero_temperature_invariance").unwrap();
        assert!(!zt.passed);
    }
}
