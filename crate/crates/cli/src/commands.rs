use std::f64::consts::PI;

use relbb::checks::{run_checks, CheckOptions};
use relbb::kinematics::boost_mode;
use relbb::montecarlo::run_identity_check_threaded;
use relbb::photon::{direction_about, direction_with_cosine};
use relbb::radiometry::moving_energy_ratio;
use relbb::spectrum::effective_temperature_cosine;
use relbb::{
    energy_density_moving_correlation, energy_density_moving_spectral, make_boost, rho_moving,
    rho_rest, temperature_multipoles, thermal_wavenumber, BoostVelocity, McConfig, PhotonMode,
    QuadratureConfig, RestTemperature, SpectralComponent, UnitSystem, Vec3,
};
use serde_json::{json, Value};

use crate::args::*;
use crate::output::{Report, Table};

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or out-of-range values (exit 2).
    Usage(String),
    /// The library could not complete the computation (exit 1).
    Failure(String),
}

impl From<relbb::Error> for CliError {
    fn from(e: relbb::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub struct Outcome {
    pub report: Report,
    pub inputs: Value,
    /// 0 on success, 1 when a statistical or invariant check failed.
    pub exit_code: i32,
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn units(c: &Common) -> CliResult<UnitSystem> {
    let base = match c.units {
        UnitsArg::Natural => UnitSystem::natural(),
        UnitsArg::Si => UnitSystem::si(),
    };
    if c.hbar.is_none() && c.c.is_none() && c.kb.is_none() {
        return Ok(base);
    }
    UnitSystem::custom(
        c.hbar.unwrap_or(base.hbar()),
        c.c.unwrap_or(base.c()),
        c.kb.unwrap_or(base.k_b()),
    )
    .map_err(|e| CliError::Usage(e.to_string()))
}

fn units_json(u: &UnitSystem) -> Value {
    json!({ "mode": u.mode(), "hbar": u.hbar(), "c": u.c(), "k_b": u.k_b() })
}

fn boost(b: &BoostArgs) -> CliResult<BoostVelocity> {
    let beta = match &b.beta_vec {
        Some(v) if v.len() == 3 => Vec3::new(v[0], v[1], v[2]),
        Some(v) => return usage(format!("--beta-vec needs 3 components, got {}", v.len())),
        None => Vec3::new(0.0, 0.0, b.beta),
    };
    make_boost(beta).map_err(|e| CliError::Usage(e.to_string()))
}

fn temperature(t: f64) -> CliResult<RestTemperature> {
    RestTemperature::new(t).map_err(|e| CliError::Usage(e.to_string()))
}

fn positive_temperature(t: f64) -> CliResult<RestTemperature> {
    if t.is_nan() || t <= 0.0 {
        return usage(format!("--temperature must be positive, got {t}"));
    }
    temperature(t)
}

fn cosine(name: &str, mu: f64) -> CliResult<f64> {
    if mu.is_finite() && (-1.0..=1.0).contains(&mu) {
        Ok(mu)
    } else {
        usage(format!("--{name} must lie in [-1, 1], got {mu}"))
    }
}

fn component(c: ComponentArg) -> SpectralComponent {
    match c {
        ComponentArg::ZeroPoint => SpectralComponent::ZeroPoint,
        ComponentArg::Thermal => SpectralComponent::Thermal,
        ComponentArg::Total => SpectralComponent::Total,
    }
}

fn frequency_grid(min: f64, max: f64, points: usize, grid: Grid) -> Vec<f64> {
    if points == 1 {
        return vec![min];
    }
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i == 0 {
                return min;
            }
            if i == points - 1 {
                return max;
            }
            let f = i as f64 / last;
            match grid {
                Grid::Linear => min + (max - min) * f,
                Grid::Log => (min.ln() + (max.ln() - min.ln()) * f).exp(),
            }
        })
        .collect()
}

pub fn spectrum(a: &SpectrumArgs) -> CliResult<Outcome> {
    let u = units(&a.common)?;
    let v = boost(&a.boost)?;
    let t = temperature(a.temperature)?;
    let mu = cosine("mu-prime", a.mu_prime)?;
    let scale = thermal_wavenumber(t, &u).unwrap_or(1.0);
    let omega_min = a.omega_min.unwrap_or(0.01 * scale);
    let omega_max = a.omega_max.unwrap_or(20.0 * scale);
    if !(omega_min.is_finite() && omega_min >= 0.0) {
        return usage(format!("--omega-min must be finite and >= 0, got {omega_min}"));
    }
    if !(omega_max.is_finite() && omega_max >= omega_min) {
        return usage(format!("--omega-max must be finite and >= --omega-min, got {omega_max}"));
    }
    if a.points == 0 {
        return usage("--points must be >= 1");
    }
    if a.grid == Grid::Log && omega_min == 0.0 {
        return usage("--grid log needs --omega-min > 0");
    }
    let comp = component(a.component);
    let density_scale = if a.per_hz { 2.0 * PI } else { 1.0 };
    let omegas = frequency_grid(omega_min, omega_max, a.points, a.grid);

    let mut report = Report::default();
    match a.frame {
        Frame::Rest => {
            if !v.is_rest() {
                report.warnings.push("boost flags are ignored for --frame rest".into());
            }
            let mut table = Table::new("spectrum", &["omega", "rho"]);
            for &w in &omegas {
                let rho = rho_rest(w, t, comp, &u)?.0 * density_scale;
                table.push(vec![w.into(), rho.into()]);
            }
            report.tables.push(table);
        }
        Frame::Moving => {
            let khat = direction_with_cosine(v.axis(), mu);
            let t_eff = effective_temperature_cosine(mu, &v, t);
            let mut table = Table::new("spectrum", &["omega_prime", "rho_prime", "t_eff"]);
            for &w in &omegas {
                let rho = rho_moving(w, khat, &v, t, comp, &u)?.0 * density_scale;
                table.push(vec![w.into(), rho.into(), t_eff.into()]);
            }
            report.tables.push(table);
        }
    }
    let inputs = json!({
        "units": units_json(&u),
        "frame": a.frame,
        "temperature": t.value(),
        "beta": v.beta().0,
        "mu_prime": mu,
        "component": a.component,
        "omega_min": omega_min,
        "omega_max": omega_max,
        "points": a.points,
        "grid": a.grid,
        "per_hz": a.per_hz,
    });
    Ok(Outcome { report, inputs, exit_code: 0 })
}

pub fn boost_mode_cmd(a: &BoostModeArgs) -> CliResult<Outcome> {
    let u = units(&a.common)?;
    let v = boost(&a.boost)?;
    let mu = cosine("mu", a.mu)?;
    if !(a.omega.is_finite() && a.omega >= 0.0) {
        return usage(format!("--omega must be finite and >= 0, got {}", a.omega));
    }
    if !a.phi.is_finite() {
        return usage("--phi must be finite");
    }
    let axis = v.axis();
    let mode = PhotonMode::new(a.omega, direction_about(axis, mu, a.phi))?;
    let r = boost_mode(&mode, &v);
    let mut table = Table::new(
        "mode",
        &["omega_prime", "mu_prime", "jac_freq", "jac_solid_angle"],
    );
    table.push(vec![
        r.mode_prime.omega().into(),
        r.mode_prime.khat().dot(axis).into(),
        r.jac_freq.into(),
        r.jac_solid_angle.into(),
    ]);
    let mut report = Report::default();
    report.tables.push(table);
    report.extra.insert("khat_prime".into(), json!(r.mode_prime.khat().0));
    let inputs = json!({
        "units": units_json(&u),
        "beta": v.beta().0,
        "omega": a.omega,
        "mu": mu,
        "phi": a.phi,
    });
    Ok(Outcome { report, inputs, exit_code: 0 })
}

fn quad_config(q: &QuadArgs) -> CliResult<QuadratureConfig> {
    let cfg = QuadratureConfig {
        rel_tol: q.rel_tol,
        abs_tol: q.abs_tol,
        max_levels: q.max_levels,
        omega_cutoff: None,
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

pub fn energy_density(a: &EnergyArgs) -> CliResult<Outcome> {
    let u = units(&a.common)?;
    let v = boost(&a.boost)?;
    let t = positive_temperature(a.temperature)?;
    let cfg = quad_config(&a.quad)?;
    let expected = moving_energy_ratio(&v);

    let mut reports = Vec::new();
    if matches!(a.method, Method::Quadrature | Method::Both) {
        reports.push(("quadrature", energy_density_moving_spectral(t, &v, SpectralComponent::Thermal, &cfg, &u)?));
    }
    if matches!(a.method, Method::Correlation | Method::Both) {
        reports.push(("correlation", energy_density_moving_correlation(t, &v, &cfg, &u)?));
    }
    let mut table = Table::new(
        "energy_density",
        &["method", "w_rest", "w_moving", "ratio", "expected_ratio", "difference"],
    );
    for (name, r) in &reports {
        table.push(vec![
            (*name).into(),
            r.w_rest.into(),
            r.w_moving.into(),
            r.ratio.into(),
            expected.into(),
            (r.ratio - expected).into(),
        ]);
    }
    let mut report = Report::default();
    report.tables.push(table);
    let inputs = json!({
        "units": units_json(&u),
        "temperature": t.value(),
        "beta": v.beta().0,
        "method": a.method,
        "rel_tol": cfg.rel_tol,
        "abs_tol": cfg.abs_tol,
        "max_levels": cfg.max_levels,
    });
    Ok(Outcome { report, inputs, exit_code: 0 })
}

pub const MAX_LMAX: usize = 4096;

pub fn anisotropy(a: &AnisotropyArgs) -> CliResult<Outcome> {
    let u = units(&a.common)?;
    let v = boost(&a.boost)?;
    let t = temperature(a.temperature)?;
    if a.lmax > MAX_LMAX {
        return usage(format!("--lmax must be <= {MAX_LMAX}, got {}", a.lmax));
    }
    if let Some(n) = a.map_points {
        if n < 2 {
            return usage("--map-points must be >= 2");
        }
    }
    let m = temperature_multipoles(&v, t, a.lmax);
    let mut table = Table::new("multipoles", &["l", "a_l"]);
    for (l, &coeff) in m.a.iter().enumerate() {
        table.push(vec![l.into(), coeff.into()]);
    }
    let mut report = Report::default();
    report.tables.push(table);
    if let Some(n) = a.map_points {
        let mut map = Table::new("map", &["mu_prime", "t_eff"]);
        for i in 0..n {
            let mu = if i == n - 1 { 1.0 } else { -1.0 + 2.0 * i as f64 / (n - 1) as f64 };
            map.push(vec![mu.into(), effective_temperature_cosine(mu, &v, t).into()]);
        }
        report.tables.push(map);
    }
    report.extra.insert("convention".into(), json!(m.convention));
    report.extra.insert("quadrature_nodes".into(), json!(m.nodes));
    let inputs = json!({
        "units": units_json(&u),
        "temperature": t.value(),
        "beta": v.beta().0,
        "lmax": a.lmax,
        "map_points": a.map_points,
    });
    Ok(Outcome { report, inputs, exit_code: 0 })
}

/// Bands outside which `mc-verify` exits with status 1.
pub const MC_CHI2_BAND: (f64, f64) = (0.5, 1.5);
pub const MC_MAX_Z: f64 = 6.0;

pub fn mc_verify(a: &McArgs) -> CliResult<Outcome> {
    let u = units(&a.common)?;
    let v = boost(&a.boost)?;
    let t = positive_temperature(a.temperature)?;
    if a.threads == 0 {
        return usage("--threads must be >= 1");
    }
    let mut cfg = McConfig::for_temperature(t, &u, a.n, a.seed);
    cfg.n_omega_bins = a.bins_omega;
    cfg.n_mu_bins = a.bins_mu;
    if let Some(max) = a.omega_prime_max {
        cfg.omega_prime_max = max;
    }
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let mut r = run_identity_check_threaded(t, &v, &cfg, &u, a.threads)?;
    if let Some(bias) = a.inject_bias {
        for est in r.estimated_density.iter_mut() {
            *est *= bias;
        }
        r.rescore();
    }

    let mut report = Report::default();
    if r.sparse_bins > 0 {
        report.warnings.push(format!(
            "{} of {} bins have expected count < 10 and are excluded from chi2",
            r.sparse_bins,
            r.n_bins()
        ));
    }
    let stat_ok = r.dof > 0
        && (MC_CHI2_BAND.0..=MC_CHI2_BAND.1).contains(&r.chi2_per_dof)
        && r.max_abs_z < MC_MAX_Z;
    if r.dof == 0 {
        report.warnings.push("no bin has enough expected samples for a chi2 test".into());
    }

    let mut summary = Table::new(
        "summary",
        &[
            "n_samples", "seed", "dof", "chi2", "chi2_per_dof", "max_abs_z", "sparse_bins",
            "weighted_ratio", "weighted_ratio_std_error", "expected_ratio", "ratio_z", "passed",
        ],
    );
    summary.push(vec![
        r.n_samples.into(),
        r.seed.into(),
        r.dof.into(),
        r.chi2.into(),
        r.chi2_per_dof.into(),
        r.max_abs_z.into(),
        r.sparse_bins.into(),
        r.weighted_ratio.into(),
        r.weighted_ratio_std_error.into(),
        r.expected_ratio.into(),
        r.ratio_z().into(),
        stat_ok.into(),
    ]);
    let mut bins = Table::new(
        "bins",
        &[
            "omega_lo", "omega_hi", "mu_lo", "mu_hi", "count", "expected_count", "estimated",
            "analytic", "std_error", "model_std_error", "z", "included",
        ],
    );
    let n_mu = cfg.n_mu_bins;
    for b in 0..r.n_bins() {
        let (i, j) = (b / n_mu, b % n_mu);
        bins.push(vec![
            r.omega_edges[i].into(),
            r.omega_edges[i + 1].into(),
            r.mu_edges[j].into(),
            r.mu_edges[j + 1].into(),
            r.counts[b].into(),
            r.expected_count[b].into(),
            r.estimated_density[b].into(),
            r.analytic_density[b].into(),
            r.std_error[b].into(),
            r.model_std_error[b].into(),
            r.z[b].unwrap_or(f64::NAN).into(),
            r.included[b].into(),
        ]);
    }
    report.tables.push(summary);
    report.tables.push(bins);

    let inputs = json!({
        "units": units_json(&u),
        "temperature": t.value(),
        "beta": v.beta().0,
        "n": cfg.n_samples,
        "seed": cfg.seed,
        "bins_omega": cfg.n_omega_bins,
        "bins_mu": cfg.n_mu_bins,
        "omega_prime_max": cfg.omega_prime_max,
        "threads": a.threads,
        "inject_bias": a.inject_bias,
    });
    Ok(Outcome {
        report,
        inputs,
        exit_code: if stat_ok { 0 } else { 1 },
    })
}

pub fn selftest(a: &SelftestArgs) -> CliResult<Outcome> {
    if a.threads == 0 {
        return usage("--threads must be >= 1");
    }
    let outcomes = run_checks(&CheckOptions {
        quick: a.quick,
        threads: a.threads,
        inject_fault: a.inject_fault,
    })?;
    let mut table = Table::new("checks", &["name", "measured", "relation", "limit", "status"]);
    for c in &outcomes {
        table.push(vec![
            c.name.into(),
            c.measured.into(),
            c.relation.into(),
            c.limit.into(),
            (if c.passed { "pass" } else { "fail" }).into(),
        ]);
    }
    let failed = outcomes.iter().filter(|c| !c.passed).count();
    let mut report = Report::default();
    report.tables.push(table);
    report.extra.insert("failed".into(), json!(failed));
    if a.quick {
        report.warnings.push("--quick: Monte Carlo checks skipped".into());
    }
    let inputs = json!({ "quick": a.quick, "threads": a.threads, "inject_fault": a.inject_fault });
    Ok(Outcome {
        report,
        inputs,
        exit_code: if failed == 0 { 0 } else { 1 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_hit_both_endpoints() {
        let g = frequency_grid(0.1, 10.0, 5, Grid::Log);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[4], 10.0);
        assert!((g[2] - 1.0).abs() < 1e-15);
        assert_eq!(frequency_grid(2.0, 3.0, 1, Grid::Linear), vec![2.0]);
        assert_eq!(frequency_grid(0.0, 1.0, 3, Grid::Linear), vec![0.0, 0.5, 1.0]);
    }
}
