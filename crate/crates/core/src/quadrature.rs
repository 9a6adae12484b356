//! Numerical integration: Gauss–Legendre rules and a globally adaptive
//! 7/15-point Gauss–Kronrod integrator.
//!
//! Semi-infinite frequency integrals are mapped onto [0, 1) with
//! ω = s·t/(1 − t), where `s` is the thermal frequency k_B T/ħ, so the bulk of
//! a Planck-like integrand sits in the middle of the unit interval.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Controls for adaptive quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum bisection depth of any subinterval.
    pub max_levels: u32,
    /// Upper frequency limit; required whenever the zero-point term is integrated.
    pub omega_cutoff: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_levels: 20,
            omega_cutoff: None,
        }
    }
}

impl QuadratureConfig {
    pub fn with_cutoff(mut self, omega_cutoff: f64) -> Self {
        self.omega_cutoff = Some(omega_cutoff);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("abs_tol must be > 0, got {}", self.abs_tol)));
        }
        if self.max_levels < 1 {
            return Err(Error::InvalidConfig("max_levels must be >= 1".into()));
        }
        if let Some(cut) = self.omega_cutoff {
            if !(cut > 0.0 && cut.is_finite()) {
                return Err(Error::InvalidConfig(format!("omega_cutoff must be > 0, got {cut}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    /// Sum of |K15 − G7| over the final partition.
    pub error_estimate: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

// Kronrod abscissae (positive half, descending) and weights; Gauss weights for
// the odd-indexed abscissae.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod15<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

/// Globally adaptive G7/K15 integration of `f` over the finite interval [a, b].
pub fn integrate_interval<F>(mut f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    cfg.validate()?;
    let mut evaluations = 0usize;
    let mut checked = |x: f64| {
        evaluations += 1;
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand { at: x })
        }
    };
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            intervals: 0,
        });
    }

    let (value, error) = kronrod15(&mut checked, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error, depth: 0 });
    let mut total = value;
    let mut total_err = error;

    loop {
        if total_err <= cfg.abs_tol.max(cfg.rel_tol * total.abs()) {
            break;
        }
        let worst = heap.pop().expect("partition is never empty");
        if worst.depth >= cfg.max_levels {
            heap.push(worst);
            let (value, error) = resum(&heap);
            return Err(Error::NonConvergence {
                estimate: value,
                error,
                max_levels: cfg.max_levels,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = kronrod15(&mut checked, worst.a, mid)?;
        let (rv, re) = kronrod15(&mut checked, mid, worst.b)?;
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        let depth = worst.depth + 1;
        heap.push(Segment { a: worst.a, b: mid, value: lv, error: le, depth });
        heap.push(Segment { a: mid, b: worst.b, value: rv, error: re, depth });
        // Running sums drift; refresh them occasionally.
        if heap.len() % 64 == 0 {
            (total, total_err) = resum(&heap);
        }
    }

    let intervals = heap.len();
    let (value, error_estimate) = resum(&heap);
    Ok(QuadResult {
        value,
        error_estimate,
        evaluations,
        intervals,
    })
}

/// Sums the partition in left-to-right order so the result does not depend on heap layout.
fn resum(heap: &BinaryHeap<Segment>) -> (f64, f64) {
    let mut segs: Vec<&Segment> = heap.iter().collect();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    segs.iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
}

/// ∫₀^∞ f(ω) dω via ω = scale·t/(1 − t). `f` must decay fast enough that the
/// mapped integrand vanishes as t → 1.
pub fn integrate_semi_infinite<F>(mut f: F, scale: f64, cfg: &QuadratureConfig) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidConfig(format!("scale must be > 0, got {scale}")));
    }
    integrate_interval(
        |t| {
            if t >= 1.0 {
                return 0.0;
            }
            let one_minus = 1.0 - t;
            let omega = scale * t / one_minus;
            if omega.is_infinite() {
                return 0.0;
            }
            let y = f(omega);
            if y == 0.0 {
                0.0
            } else {
                y * scale / (one_minus * one_minus)
            }
        },
        0.0,
        1.0,
        cfg,
    )
}

/// Legendre polynomial P_l(x) by the three-term recurrence.
pub fn legendre(l: usize, x: f64) -> f64 {
    legendre_pair(l, x).0
}

/// (P_l(x), P_{l−1}(x)); the second entry is 0 for l = 0.
fn legendre_pair(l: usize, x: f64) -> (f64, f64) {
    if l == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0;
    let mut cur = x;
    for k in 1..l {
        let next = ((2 * k + 1) as f64 * x * cur - k as f64 * prev) / (k + 1) as f64;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// An n-point Gauss–Legendre rule on [−1, 1], nodes in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, pm1) = legendre_pair(n, x);
                dp = nf * (x * p - pm1) / (x * x - 1.0);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    let (p, pm1) = legendre_pair(n, x);
                    dp = nf * (x * p - pm1) / (x * x - 1.0);
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∫_a^b f(x) dx with the rule mapped onto [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}
