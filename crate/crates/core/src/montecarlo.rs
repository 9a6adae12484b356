//! Monte Carlo check of the change-of-variables identity
//!
//! ```text
//! ρ′(ω′, k̂′) dω′ dΩ′ = γ²(1 − k̂·β)² ρ(ω, k̂) dω dΩ
//! ```
//!
//! Rest-frame photon modes are drawn from the thermal density ρ/W, boosted, and
//! histogrammed in (ω′, μ′ = k̂′·v̂) with weight γ²(1 − k̂·β)². Scaled by W and
//! the bin volume (including the 2π azimuth), each bin estimates the bin average
//! of the analytic observer-frame density.
//!
//! Random numbers come from ChaCha8, seeded with the user seed. Samples are
//! processed in fixed-size chunks, each on its own ChaCha stream, and chunk
//! sums are merged in chunk order, so results do not depend on thread count.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::boost_mode;
use crate::photon::{direction_with_cosine, PhotonMode};
use crate::radiometry::{moving_energy_ratio, stefan_boltzmann_energy_density};
use crate::spectrum::{doppler_factor, rho_moving, SpectralComponent};
use crate::units::{RestTemperature, UnitSystem};
use crate::velocity::BoostVelocity;

/// ζ(4) = π⁴/90.
pub const ZETA4: f64 = PI * PI * PI * PI / 90.0;

/// Samples per RNG stream.
pub const CHUNK_SIZE: u64 = 1 << 16;

/// Bins whose expected sample count is below this are left out of χ².
pub const MIN_EXPECTED_COUNT: f64 = 10.0;

const MIXTURE_TABLE_LEN: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub n_omega_bins: usize,
    pub n_mu_bins: usize,
    pub omega_prime_max: f64,
}

impl McConfig {
    /// 32 × 16 bins up to ω′ = 16 k_B T/ħ.
    pub fn for_temperature(t: RestTemperature, u: &UnitSystem, n_samples: u64, seed: u64) -> Self {
        McConfig {
            n_samples,
            seed,
            n_omega_bins: 32,
            n_mu_bins: 16,
            omega_prime_max: 16.0 * u.k_b() * t.value() / u.hbar(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 1 {
            return Err(Error::InvalidConfig("n_samples must be >= 1".into()));
        }
        if self.n_omega_bins < 4 || self.n_mu_bins < 4 {
            return Err(Error::InvalidConfig(format!(
                "bin counts must be >= 4, got {} x {}",
                self.n_omega_bins, self.n_mu_bins
            )));
        }
        if !(self.omega_prime_max > 0.0 && self.omega_prime_max.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "omega_prime_max must be > 0, got {}",
                self.omega_prime_max
            )));
        }
        Ok(())
    }
}

/// Cumulative mixture weights Σ_{j≤k} j⁻⁴ (unnormalized).
fn mixture_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut acc = 0.0;
        (1..=MIXTURE_TABLE_LEN)
            .map(|k| {
                let kf = k as f64;
                acc += 1.0 / (kf * kf * kf * kf);
                acc
            })
            .collect()
    })
}

fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // (0, 1]
    1.0 - rng.random::<f64>()
}

/// Draws x with density (15/π⁴) x³/(eˣ − 1).
///
/// Uses x³/(eˣ − 1) = Σ_k x³e^{−kx}: pick k with probability k⁻⁴/ζ(4), then
/// draw x from a Gamma(4) distribution with rate k.
pub fn sample_planck_x<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let table = mixture_table();
    let target = rng.random::<f64>() * ZETA4;
    let mut k = table.partition_point(|&c| c <= target) + 1;
    if k > table.len() {
        // Tail beyond the table: keep summing until the target is passed or the
        // terms stop changing the sum.
        let mut acc = table[table.len() - 1];
        loop {
            let kf = k as f64;
            let next = acc + 1.0 / (kf * kf * kf * kf);
            if next > target || next == acc {
                break;
            }
            acc = next;
            k += 1;
        }
    }
    let product = open_unit(rng) * open_unit(rng) * open_unit(rng) * open_unit(rng);
    -product.ln() / k as f64
}

/// Draws a rest-frame photon mode from the thermal spectral distribution:
/// frequency from the Planck energy spectrum and an isotropic direction.
pub fn sample_rest_mode<R: Rng + ?Sized>(
    t: RestTemperature,
    rng: &mut R,
    u: &UnitSystem,
) -> Result<PhotonMode> {
    if t.is_zero() {
        return Err(Error::ZeroTemperature("thermal mode sampling"));
    }
    let x = sample_planck_x(rng);
    let mu = 2.0 * rng.random::<f64>() - 1.0;
    let phi = 2.0 * PI * rng.random::<f64>();
    PhotonMode::from_polar(u.from_dimensionless(x, t.value()), mu, phi)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub n_samples: u64,
    pub seed: u64,
    pub omega_edges: Vec<f64>,
    pub mu_edges: Vec<f64>,
    /// Row-major in (ω′ bin, μ′ bin).
    pub counts: Vec<u64>,
    pub estimated_density: Vec<f64>,
    pub analytic_density: Vec<f64>,
    /// Standard error of the estimate from the sample variance of the weights.
    pub std_error: Vec<f64>,
    /// Standard error implied by the analytic density; used for z and χ².
    pub model_std_error: Vec<f64>,
    pub expected_count: Vec<f64>,
    pub included: Vec<bool>,
    pub z: Vec<Option<f64>>,
    pub max_abs_z: f64,
    pub chi2: f64,
    pub dof: usize,
    pub chi2_per_dof: f64,
    pub sparse_bins: usize,
    /// Mean weight over all samples, an estimate of W′/W.
    pub weighted_ratio: f64,
    pub weighted_ratio_std_error: f64,
    pub expected_ratio: f64,
}

impl McReport {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    /// (estimated − expected) W′/W in units of its standard error. At β = 0
    /// every weight is 1 and the standard error is 0.
    pub fn ratio_z(&self) -> f64 {
        let diff = self.weighted_ratio - self.expected_ratio;
        if self.weighted_ratio_std_error > 0.0 {
            diff / self.weighted_ratio_std_error
        } else if diff.abs() <= 4.0 * f64::EPSILON * self.expected_ratio {
            0.0
        } else {
            f64::INFINITY
        }
    }

    /// Recomputes z-scores and χ² from the current estimated and analytic columns.
    pub fn rescore(&mut self) {
        let mut chi2 = 0.0;
        let mut dof = 0;
        let mut max_abs_z: f64 = 0.0;
        for i in 0..self.n_bins() {
            if self.included[i] {
                let z = (self.estimated_density[i] - self.analytic_density[i]) / self.model_std_error[i];
                chi2 += z * z;
                dof += 1;
                max_abs_z = max_abs_z.max(z.abs());
                self.z[i] = Some(z);
            } else {
                self.z[i] = None;
            }
        }
        self.chi2 = chi2;
        self.dof = dof;
        self.chi2_per_dof = if dof > 0 { chi2 / dof as f64 } else { f64::NAN };
        self.max_abs_z = max_abs_z;
    }
}

#[derive(Clone, Debug)]
struct ChunkSums {
    counts: Vec<u64>,
    sum_w: Vec<f64>,
    sum_w2: Vec<f64>,
    total_w: f64,
    total_w2: f64,
}

impl ChunkSums {
    fn new(bins: usize) -> Self {
        ChunkSums {
            counts: vec![0; bins],
            sum_w: vec![0.0; bins],
            sum_w2: vec![0.0; bins],
            total_w: 0.0,
            total_w2: 0.0,
        }
    }

    fn merge(&mut self, other: &ChunkSums) {
        for i in 0..self.counts.len() {
            self.counts[i] += other.counts[i];
            self.sum_w[i] += other.sum_w[i];
            self.sum_w2[i] += other.sum_w2[i];
        }
        self.total_w += other.total_w;
        self.total_w2 += other.total_w2;
    }
}

fn run_chunk(
    index: u64,
    t: RestTemperature,
    v: &BoostVelocity,
    cfg: &McConfig,
    u: &UnitSystem,
) -> Result<ChunkSums> {
    let start = index * CHUNK_SIZE;
    let len = CHUNK_SIZE.min(cfg.n_samples - start);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);

    let n_mu = cfg.n_mu_bins;
    let mut sums = ChunkSums::new(cfg.n_omega_bins * n_mu);
    let axis = v.axis();
    let gamma = v.gamma();
    let beta = v.beta();
    let d_omega = cfg.omega_prime_max / cfg.n_omega_bins as f64;
    let d_mu = 2.0 / n_mu as f64;
    for _ in 0..len {
        let mode = sample_rest_mode(t, &mut rng, u)?;
        let doppler = gamma * (1.0 - mode.khat().dot(beta));
        let w = doppler * doppler;
        sums.total_w += w;
        sums.total_w2 += w * w;

        let boosted = boost_mode(&mode, v).mode_prime;
        let omega_prime = boosted.omega();
        if omega_prime >= cfg.omega_prime_max {
            continue;
        }
        let mu_prime = boosted.khat().dot(axis);
        let i = ((omega_prime / d_omega) as usize).min(cfg.n_omega_bins - 1);
        let j = (((mu_prime + 1.0) / d_mu) as usize).min(n_mu - 1);
        let b = i * n_mu + j;
        sums.counts[b] += 1;
        sums.sum_w[b] += w;
        sums.sum_w2[b] += w * w;
    }
    Ok(sums)
}

const GAUSS3: [(f64, f64); 3] = [
    (-0.774_596_669_241_483_4, 5.0 / 9.0),
    (0.0, 8.0 / 9.0),
    (0.774_596_669_241_483_4, 5.0 / 9.0),
];

/// ∫∫ over a bin of f(ω′, μ′) by a 3×3 Gauss product rule.
fn bin_integral<F: FnMut(f64, f64) -> f64>(w0: f64, w1: f64, m0: f64, m1: f64, mut f: F) -> f64 {
    let (wc, wh) = (0.5 * (w0 + w1), 0.5 * (w1 - w0));
    let (mc, mh) = (0.5 * (m0 + m1), 0.5 * (m1 - m0));
    let mut s = 0.0;
    for &(xo, wo) in &GAUSS3 {
        for &(xm, wm) in &GAUSS3 {
            s += wo * wm * f(wc + wh * xo, mc + mh * xm);
        }
    }
    s * wh * mh
}

/// Runs the weighted-histogram check single-threaded.
pub fn run_identity_check(
    t: RestTemperature,
    v: &BoostVelocity,
    cfg: &McConfig,
    u: &UnitSystem,
) -> Result<McReport> {
    run_identity_check_threaded(t, v, cfg, u, 1)
}

/// As [`run_identity_check`], spreading chunks over `threads` workers. The
/// report is bit-identical for every thread count.
pub fn run_identity_check_threaded(
    t: RestTemperature,
    v: &BoostVelocity,
    cfg: &McConfig,
    u: &UnitSystem,
    threads: usize,
) -> Result<McReport> {
    cfg.validate()?;
    if t.is_zero() {
        return Err(Error::ZeroTemperature("the Monte Carlo identity check"));
    }
    let n_chunks = cfg.n_samples.div_ceil(CHUNK_SIZE);
    let chunks: Vec<ChunkSums> = if threads <= 1 {
        (0..n_chunks)
            .map(|i| run_chunk(i, t, v, cfg, u))
            .collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..n_chunks)
                .into_par_iter()
                .map(|i| run_chunk(i, t, v, cfg, u))
                .collect::<Result<_>>()
        })?
    };
    let mut sums = ChunkSums::new(cfg.n_omega_bins * cfg.n_mu_bins);
    for c in &chunks {
        sums.merge(c);
    }
    Ok(build_report(sums, t, v, cfg, u))
}

fn build_report(
    sums: ChunkSums,
    t: RestTemperature,
    v: &BoostVelocity,
    cfg: &McConfig,
    u: &UnitSystem,
) -> McReport {
    let n = cfg.n_samples as f64;
    let w_rest = stefan_boltzmann_energy_density(t, u);
    let (n_om, n_mu) = (cfg.n_omega_bins, cfg.n_mu_bins);
    let omega_edges: Vec<f64> = (0..=n_om)
        .map(|i| cfg.omega_prime_max * i as f64 / n_om as f64)
        .collect();
    let mu_edges: Vec<f64> = (0..=n_mu).map(|j| -1.0 + 2.0 * j as f64 / n_mu as f64).collect();
    let axis = v.axis();

    let bins = n_om * n_mu;
    let mut report = McReport {
        n_samples: cfg.n_samples,
        seed: cfg.seed,
        omega_edges: omega_edges.clone(),
        mu_edges: mu_edges.clone(),
        counts: sums.counts.clone(),
        estimated_density: vec![0.0; bins],
        analytic_density: vec![0.0; bins],
        std_error: vec![0.0; bins],
        model_std_error: vec![0.0; bins],
        expected_count: vec![0.0; bins],
        included: vec![false; bins],
        z: vec![None; bins],
        max_abs_z: 0.0,
        chi2: 0.0,
        dof: 0,
        chi2_per_dof: f64::NAN,
        sparse_bins: 0,
        weighted_ratio: 0.0,
        weighted_ratio_std_error: 0.0,
        expected_ratio: moving_energy_ratio(v),
    };

    for i in 0..n_om {
        for j in 0..n_mu {
            let b = i * n_mu + j;
            let (w0, w1) = (omega_edges[i], omega_edges[i + 1]);
            let (m0, m1) = (mu_edges[j], mu_edges[j + 1]);
            let volume = (w1 - w0) * (m1 - m0);
            let norm = w_rest / (volume * 2.0 * PI);

            // ∫ρ′, ∫D²ρ′ and ∫D⁻²ρ′ over the bin, D = γ(1 + μ′β).
            let mut moments = [0.0; 3];
            for (k, power) in [0, 2, -2].into_iter().enumerate() {
                moments[k] = bin_integral(w0, w1, m0, m1, |om, mu| {
                    let khat = direction_with_cosine(axis, mu);
                    let rho = rho_moving(om, khat, v, t, SpectralComponent::Thermal, u)
                        .map_or(f64::NAN, |d| d.0);
                    rho * doppler_factor(khat, v).powi(power)
                });
            }
            let analytic = moments[0] / volume;
            let p_bin = 2.0 * PI * moments[1] / w_rest;
            let m1_w = 2.0 * PI * moments[0] / w_rest;
            let m2_w = 2.0 * PI * moments[2] / w_rest;

            let mean_w = sums.sum_w[b] / n;
            let mean_w2 = sums.sum_w2[b] / n;
            report.estimated_density[b] = norm * mean_w;
            report.analytic_density[b] = analytic;
            report.std_error[b] = norm * ((mean_w2 - mean_w * mean_w).max(0.0) / n).sqrt();
            report.model_std_error[b] = norm * ((m2_w - m1_w * m1_w).max(0.0) / n).sqrt();
            report.expected_count[b] = n * p_bin;
            report.included[b] = report.expected_count[b] >= MIN_EXPECTED_COUNT;
        }
    }
    report.sparse_bins = report.included.iter().filter(|&&inc| !inc).count();

    let mean = sums.total_w / n;
    report.weighted_ratio = mean;
    report.weighted_ratio_std_error = ((sums.total_w2 / n - mean * mean).max(0.0) / n).sqrt();
    report.rescore();
    report
}
