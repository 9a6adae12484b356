//! Acceptance suite. Every criterion prints one `PASS`/`FAIL` line, then asserts.
//!
//! Run with `cargo test -p relbb-cli --test acceptance -- --nocapture`.

use std::f64::consts::PI;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relbb::kinematics::unaberrate_cosine;
use relbb::photon::direction_about;
use relbb::radiometry::moving_energy_ratio;
use relbb::{
    boost_mode, energy_density_moving_correlation, energy_density_moving_spectral,
    energy_density_rest, inverse_boost_mode, make_boost, rho_moving, rho_moving_pullback, rho_rest,
    run_identity_check, temperature_multipoles, BoostVelocity, McConfig, PhotonMode,
    QuadratureConfig, RestTemperature, SpectralComponent, UnitSystem, Vec3,
};

fn verdict(id: u32, title: &str, passed: bool, detail: String, elapsed: Duration, budget: Duration) {
    let in_time = elapsed < budget;
    let status = if passed && in_time { "PASS" } else { "FAIL" };
    println!(
        "{status} [{id}] {title}: {detail}; {:.3} s (budget {} s)",
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    assert!(passed, "criterion {id} ({title}) failed: {detail}");
    assert!(in_time, "criterion {id} ({title}) exceeded its runtime budget");
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn temp(t: f64) -> RestTemperature {
    RestTemperature::new(t).unwrap()
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    let mu: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let s = (1.0 - mu * mu).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), mu)
}

fn random_boost(rng: &mut ChaCha8Rng, max_speed: f64) -> BoostVelocity {
    let speed: f64 = rng.random_range(0.0..max_speed);
    make_boost(random_unit(rng) * speed).unwrap()
}

/// Points spread over the sphere on a Fibonacci lattice.
fn fibonacci_directions(n: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            Vec3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

#[test]
fn c1_zero_temperature_invariance() {
    let start = Instant::now();
    let u = UnitSystem::natural();
    let dirs = fibonacci_directions(64);
    let mut worst = 0.0f64;
    let mut evaluated = 0usize;
    for &beta in &[0.0, 0.3, 0.9, 0.99] {
        let axis = Vec3::new(0.3, -0.5, 0.8).normalized();
        let v = make_boost(axis * beta).unwrap();
        for &k in &dirs {
            for i in 0..32 {
                let w = 10f64.powf(-3.0 + 6.0 * i as f64 / 31.0);
                let expected = u.hbar() * (w / (2.0 * PI * u.c())).powi(3);
                for comp in [SpectralComponent::Total, SpectralComponent::ZeroPoint] {
                    let direct = rho_moving(w, k, &v, RestTemperature::ZERO, comp, &u).unwrap().0;
                    let pulled = rho_moving_pullback(w, k, &v, RestTemperature::ZERO, comp, &u).unwrap().0;
                    worst = worst.max(rel(direct, expected)).max(rel(pulled, expected));
                    evaluated += 2;
                }
            }
        }
    }
    verdict(
        1,
        "zero-temperature invariance",
        worst <= 1e-12,
        format!("max rel deviation {worst:.3e} over {evaluated} evaluations (limit 1e-12)"),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn c2_pullback_matches_explicit_form() {
    let start = Instant::now();
    let u = UnitSystem::natural();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let t = temp(10f64.powf(rng.random_range(-1.0..1.0)));
        let v = random_boost(&mut rng, 0.99);
        let k = random_unit(&mut rng);
        let w = t.value() * 10f64.powf(rng.random_range(-3.0..1.5));
        let comp = [SpectralComponent::Total, SpectralComponent::Thermal, SpectralComponent::ZeroPoint][i % 3];
        let a = rho_moving(w, k, &v, t, comp, &u).unwrap().0;
        let b = rho_moving_pullback(w, k, &v, t, comp, &u).unwrap().0;
        worst = worst.max(rel(a, b));
    }
    verdict(
        2,
        "pullback form equals explicit moving-frame density",
        worst <= 1e-12,
        format!("max rel difference {worst:.3e} on 1e4 points (limit 1e-12)"),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn c3_doppler_aberration_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst_w, mut worst_k) = (0.0f64, 0.0f64);
    for _ in 0..100_000 {
        let v = random_boost(&mut rng, 0.99);
        let w = 10f64.powf(rng.random_range(-3.0..3.0));
        let mode = PhotonMode::new(w, random_unit(&mut rng)).unwrap();
        let there = boost_mode(&mode, &v).mode_prime;
        let back = inverse_boost_mode(&there, &v);
        worst_w = worst_w.max(rel(back.omega(), w));
        worst_k = worst_k.max((back.khat() - mode.khat()).norm());
    }
    let passed = worst_w <= 1e-12 && worst_k <= 1e-12;
    verdict(
        3,
        "Doppler/aberration round trip",
        passed,
        format!("omega rel {worst_w:.3e}, khat abs {worst_k:.3e} over 1e5 modes (limit 1e-12)"),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn c4_stefan_boltzmann() {
    let start = Instant::now();
    let u = UnitSystem::natural();
    let cfg = QuadratureConfig::default();
    let w1 = energy_density_rest(temp(1.0), SpectralComponent::Thermal, &cfg, &u).unwrap();
    let target = PI * PI / 15.0;
    let err = (w1 - target).abs();
    let mut constants = Vec::new();
    for &t in &[0.5, 1.0, 2.0, 4.0] {
        let w = energy_density_rest(temp(t), SpectralComponent::Thermal, &cfg, &u).unwrap();
        constants.push(w / t.powi(4));
    }
    let spread = constants
        .iter()
        .map(|&c| rel(c, constants[1]))
        .fold(0.0f64, f64::max);
    let passed = err <= 1e-8 && spread <= 1e-10;
    verdict(
        4,
        "Stefan-Boltzmann",
        passed,
        format!("W(T=1) = {w1:.15} vs pi^2/15, |diff| {err:.3e} (limit 1e-8); T^4 spread {spread:.3e} (limit 1e-10)"),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn c5_moving_energy_density_two_routes() {
    let start = Instant::now();
    let u = UnitSystem::natural();
    let cfg = QuadratureConfig::default();
    let t = temp(1.0);
    let mut worst_q = 0.0f64;
    let mut worst_c = 0.0f64;
    let mut worst_agree = 0.0f64;
    for &beta in &[0.1, 0.3, 0.6, 0.9] {
        let v = BoostVelocity::along_z(beta).unwrap();
        let gamma2 = 1.0 / (1.0 - beta * beta);
        let expected = gamma2 * (1.0 + beta * beta / 3.0);
        assert!((moving_energy_ratio(&v) - expected).abs() < 1e-14);
        let q = energy_density_moving_spectral(t, &v, SpectralComponent::Thermal, &cfg, &u).unwrap();
        let c = energy_density_moving_correlation(t, &v, &cfg, &u).unwrap();
        worst_q = worst_q.max((q.ratio - expected).abs());
        worst_c = worst_c.max((c.ratio - expected).abs());
        worst_agree = worst_agree.max(rel(q.w_moving, c.w_moving));
    }
    let passed = worst_q <= 1e-8 && worst_c <= 1e-8 && worst_agree <= 1e-8;
    verdict(
        5,
        "moving-frame energy density",
        passed,
        format!(
            "quadrature |err| {worst_q:.3e}, correlation |err| {worst_c:.3e}, route disagreement {worst_agree:.3e} (limits 1e-8)"
        ),
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn c6_effective_temperature_factorization() {
    let start = Instant::now();
    let u = UnitSystem::natural();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let t = temp(10f64.powf(rng.random_range(-1.0..1.0)));
        let v = random_boost(&mut rng, 0.99);
        let k = random_unit(&mut rng);
        let t_eff = t.value() / (v.gamma() * (1.0 + k.dot(v.beta())));
        let w = t_eff * 10f64.powf(rng.random_range(-3.0..1.5));
        let moving = rho_moving(w, k, &v, t, SpectralComponent::Thermal, &u).unwrap().0;
        let planck = rho_rest(w, temp(t_eff), SpectralComponent::Thermal, &u).unwrap().0;
        worst = worst.max(rel(moving, planck));
    }
    let v = BoostVelocity::along_z(0.6).unwrap();
    let a0 = temperature_multipoles(&v, temp(1.0), 2).a[0];
    let closed = 4.0 / 3.0 * 2f64.ln();
    let mono_err = (a0 - closed).abs();
    let passed = worst <= 1e-12 && mono_err <= 1e-10;
    verdict(
        6,
        "effective-temperature factorization",
        passed,
        format!("max rel {worst:.3e} on 1e4 points (limit 1e-12); monopole {a0:.15} vs (4/3)ln2, |diff| {mono_err:.3e} (limit 1e-10)"),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn c7_monte_carlo_identity() {
    let start = Instant::now();
    let u = UnitSystem::natural();
    let t = temp(1.0);
    let v = BoostVelocity::along_z(0.6).unwrap();
    let cfg = McConfig::for_temperature(t, &u, 1_000_000, 20_240_601);
    assert_eq!((cfg.n_omega_bins, cfg.n_mu_bins), (32, 16));
    let r = run_identity_check(t, &v, &cfg, &u).unwrap();
    let elapsed = start.elapsed();
    let again = run_identity_check(t, &v, &cfg, &u).unwrap();
    let deterministic = r == again;
    let ratio_dev = (r.weighted_ratio - 1.75).abs() / r.weighted_ratio_std_error;
    let passed = (0.7..=1.3).contains(&r.chi2_per_dof)
        && r.max_abs_z < 5.0
        && ratio_dev <= 3.0
        && deterministic;
    verdict(
        7,
        "Monte Carlo change-of-variables identity",
        passed,
        format!(
            "chi2/dof {:.4} over {} dof, max|z| {:.3}, ratio {:.5} +- {:.5} ({ratio_dev:.2} sigma from 1.75), deterministic {deterministic}",
            r.chi2_per_dof, r.dof, r.max_abs_z, r.weighted_ratio, r.weighted_ratio_std_error
        ),
        elapsed,
        Duration::from_secs(60),
    );
}

#[test]
fn c8_jacobians_match_finite_differences() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..1_000 {
        let v = random_boost(&mut rng, 0.99);
        let axis = v.axis();
        let mu_p: f64 = rng.random_range(-0.999..0.999);
        let phi: f64 = rng.random_range(0.0..2.0 * PI);
        let w_p = 10f64.powf(rng.random_range(-2.0..2.0));

        // Analytic factors come from the forward map evaluated at the
        // rest-frame mode that lands on (ω′, k̂′).
        let observed = PhotonMode::new(w_p, direction_about(axis, mu_p, phi)).unwrap();
        let rest = inverse_boost_mode(&observed, &v);
        let r = boost_mode(&rest, &v);

        let hw = 1e-3 * w_p;
        let omega_at = |w: f64| {
            inverse_boost_mode(&PhotonMode::new(w, observed.khat()).unwrap(), &v).omega()
        };
        let dfreq = (omega_at(w_p + hw) - omega_at(w_p - hw)) / (2.0 * hw);

        // Azimuth about the boost axis is preserved, so dΩ/dΩ′ = dμ/dμ′.
        let beta = v.speed();
        let hm = (1e-3 * (1.0 + beta * mu_p)).min(4e-4);
        let mu_at = |m: f64| {
            let k = PhotonMode::new(1.0, direction_about(axis, m, phi)).unwrap();
            inverse_boost_mode(&k, &v).khat().dot(axis)
        };
        let dsolid = five_point(mu_at, mu_p, hm);
        let scalar = five_point(|m| unaberrate_cosine(m, beta), mu_p, hm);

        worst = worst
            .max(rel(r.jac_freq, dfreq))
            .max(rel(r.jac_solid_angle, dsolid))
            .max(rel(r.jac_solid_angle, scalar));
    }
    verdict(
        8,
        "Jacobian cross-check",
        worst <= 1e-8,
        format!("max rel difference {worst:.3e} on 1e3 points (limit 1e-8)"),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

/// Fourth-order central difference.
fn five_point(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

fn relbb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relbb"))
        .args(args)
        .output()
        .expect("failed to launch relbb")
}

#[test]
fn c9_cli_contract() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut expect = |label: &str, ok: bool| {
        if !ok {
            failures.push(label.to_string());
        }
    };

    let st = relbb(&["selftest"]);
    expect("selftest exits 0", st.status.code() == Some(0));

    let mc = ["mc-verify", "--beta", "0.6", "--n", "300000", "--seed", "11"];
    let a = relbb(&mc);
    let b = relbb(&mc);
    expect("mc-verify exits 0", a.status.code() == Some(0));
    expect("mc-verify rerun byte-identical", a.stdout == b.stdout && !a.stdout.is_empty());
    let mut threaded = mc.to_vec();
    threaded.extend(["--threads", "4"]);
    expect("mc-verify thread-count independent", relbb(&threaded).stdout == a.stdout);
    let st2 = relbb(&["selftest"]);
    expect("selftest rerun byte-identical", st.stdout == st2.stdout);
    let json = ["spectrum", "--frame", "moving", "--beta", "0.3", "--format", "json"];
    expect("spectrum rerun byte-identical", relbb(&json).stdout == relbb(&json).stdout);

    expect("injected selftest fault exits 1", relbb(&["selftest", "--quick", "--inject-fault"]).status.code() == Some(1));
    let mut biased = mc.to_vec();
    biased.extend(["--inject-bias", "1.05"]);
    expect("biased estimator exits 1", relbb(&biased).status.code() == Some(1));
    let stalled = ["energy-density", "--max-levels", "2", "--rel-tol", "1e-15", "--abs-tol", "1e-300"];
    expect("non-converging quadrature exits 1", relbb(&stalled).status.code() == Some(1));

    for bad in [
        &["spectrum", "--no-such-flag"][..],
        &["spectrum", "--beta", "1.0"],
        &["spectrum", "--temperature", "-1"],
        &["boost-mode", "--mu", "1.5"],
        &["energy-density", "--temperature", "0"],
        &["mc-verify", "--n", "0"],
        &["frobnicate"],
    ] {
        let out = relbb(bad);
        expect(&format!("{bad:?} exits 2"), out.status.code() == Some(2));
    }

    let detail = if failures.is_empty() {
        "selftest, determinism and exit-code taxonomy all hold".to_string()
    } else {
        format!("violations: {}", failures.join("; "))
    };
    verdict(9, "CLI contract", failures.is_empty(), detail, start.elapsed(), Duration::from_secs(120));
}
