//! Lorentz transformation of photon modes and of electromagnetic field pairs.
//!
//! The observer moves with velocity β relative to the blackbody rest frame.
//! Unprimed quantities belong to the rest frame, primed ones to the observer.
//! Aberration is done on the full wavevector, so the azimuth of k̂ about v̂ is
//! preserved and only the polar angle changes.

use serde::{Deserialize, Serialize};

use crate::photon::PhotonMode;
use crate::vec3::Vec3;
use crate::velocity::BoostVelocity;

/// Below this value of 1 − |k̂·v̂| the component of k̂ perpendicular to v̂ is dropped.
pub const COLLINEAR_TOL: f64 = 1e-14;

/// Boosted mode together with the Jacobians dω/dω′ and dΩ/dΩ′, both evaluated at
/// the boosted direction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeTransformResult {
    pub mode_prime: PhotonMode,
    pub jac_freq: f64,
    pub jac_solid_angle: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldPair {
    pub e: Vec3,
    pub b: Vec3,
}

impl FieldPair {
    pub fn new(e: Vec3, b: Vec3) -> Self {
        FieldPair { e, b }
    }

    /// E² − B²
    pub fn scalar_invariant(&self) -> f64 {
        self.e.norm_sqr() - self.b.norm_sqr()
    }

    /// E·B
    pub fn pseudoscalar_invariant(&self) -> f64 {
        self.e.dot(self.b)
    }
}

/// ω′ = γ(1 − k̂·β)ω.
pub fn doppler(mode: &PhotonMode, v: &BoostVelocity) -> f64 {
    if v.is_rest() {
        return mode.omega();
    }
    v.gamma() * (1.0 - mode.khat().dot(v.beta())) * mode.omega()
}

/// Propagation direction seen by the moving observer.
pub fn aberrate(mode: &PhotonMode, v: &BoostVelocity) -> Vec3 {
    match v.direction() {
        None => mode.khat(),
        Some(axis) => aberrate_about(mode.khat(), axis, v),
    }
}

fn aberrate_about(khat: Vec3, axis: Vec3, v: &BoostVelocity) -> Vec3 {
    let mu = khat.dot(axis).clamp(-1.0, 1.0);
    let beta = v.speed();
    let gamma = v.gamma();
    let perp = if 1.0 - mu.abs() < COLLINEAR_TOL {
        Vec3::ZERO
    } else {
        khat - axis * mu
    };
    // k′/|k| = k̂⊥ + γ(μ − β) v̂, and |k′|/|k| = γ(1 − βμ) on the light cone.
    let k_prime = perp + axis * (gamma * (mu - beta));
    let scale = 1.0 / (gamma * (1.0 - beta * mu));
    (k_prime * scale).normalized()
}

fn transform(mode: &PhotonMode, v: &BoostVelocity) -> PhotonMode {
    if v.is_rest() {
        return *mode;
    }
    PhotonMode::from_parts(doppler(mode, v), aberrate(mode, v))
}

/// Doppler shift plus aberration, with the analytic Jacobians
/// dω/dω′ = γ(1 + k̂′·β) and dΩ/dΩ′ = 1/(γ²(1 + k̂′·β)²).
pub fn boost_mode(mode: &PhotonMode, v: &BoostVelocity) -> ModeTransformResult {
    if v.is_rest() {
        return ModeTransformResult {
            mode_prime: *mode,
            jac_freq: 1.0,
            jac_solid_angle: 1.0,
        };
    }
    let mode_prime = transform(mode, v);
    let jac_freq = v.gamma() * (1.0 + mode_prime.khat().dot(v.beta()));
    ModeTransformResult {
        mode_prime,
        jac_freq,
        jac_solid_angle: 1.0 / (jac_freq * jac_freq),
    }
}

/// Maps an observer-frame mode back to the rest frame:
/// ω = γ(1 + k̂′·β)ω′ and k̂·v̂ = (k̂′·v̂ + β)/(1 + βk̂′·v̂).
pub fn inverse_boost_mode(mode_prime: &PhotonMode, v: &BoostVelocity) -> PhotonMode {
    transform(mode_prime, &v.reversed())
}

/// Scalar aberration of the direction cosine μ = k̂·v̂ for speed `beta`.
pub fn aberrate_cosine(mu: f64, beta: f64) -> f64 {
    (mu - beta) / (1.0 - beta * mu)
}

/// Inverse of [`aberrate_cosine`].
pub fn unaberrate_cosine(mu_prime: f64, beta: f64) -> f64 {
    (mu_prime + beta) / (1.0 + beta * mu_prime)
}

/// Transforms an (E, B) pair into the moving frame (Gaussian units):
/// E′ = v̂(v̂·E) + γ[E − v̂(v̂·E) + β×B], B′ = v̂(v̂·B) + γ[B − v̂(v̂·B) − β×E].
pub fn field_boost(f: &FieldPair, v: &BoostVelocity) -> FieldPair {
    let Some(axis) = v.direction() else {
        return *f;
    };
    let gamma = v.gamma();
    let beta = v.beta();
    let e_par = axis * axis.dot(f.e);
    let b_par = axis * axis.dot(f.b);
    FieldPair {
        e: e_par + gamma * (f.e - e_par + beta.cross(f.b)),
        b: b_par + gamma * (f.b - b_par - beta.cross(f.e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::photon::polar_direction;
    use crate::velocity::make_boost;

    fn mode_mu(omega: f64, mu: f64) -> PhotonMode {
        PhotonMode::from_polar(omega, mu, 0.7).unwrap()
    }

    #[test]
    fn doppler_examples() {
        let v = BoostVelocity::along_z(0.6).unwrap();
        assert!((doppler(&mode_mu(1.0, 1.0), &v) - 0.5).abs() < 1e-15);
        assert!((doppler(&mode_mu(1.0, -1.0), &v) - 2.0).abs() < 1e-15);
        let rest = BoostVelocity::rest();
        let m = PhotonMode::new(5.0, Vec3::new(0.6, 0.0, 0.8)).unwrap();
        assert_eq!(doppler(&m, &rest), 5.0);
    }

    #[test]
    fn aberration_examples() {
        let v = BoostVelocity::along_z(0.6).unwrap();
        let kp = aberrate(&mode_mu(1.0, 0.0), &v);
        assert!((kp.z() + 0.6).abs() < 1e-15);
        let kp = aberrate(&mode_mu(1.0, 0.6), &v);
        assert!(kp.z().abs() < 1e-15);
        for beta in [0.1, 0.6, 0.99] {
            let v = BoostVelocity::along_z(beta).unwrap();
            assert_eq!(aberrate(&mode_mu(1.0, 1.0), &v), Vec3::Z);
            assert_eq!(aberrate(&mode_mu(1.0, -1.0), &v), -Vec3::Z);
        }
    }

    #[test]
    fn aberration_preserves_azimuth() {
        let v = BoostVelocity::along_z(0.7).unwrap();
        let m = PhotonMode::from_polar(1.0, 0.2, 2.1).unwrap();
        let kp = aberrate(&m, &v);
        let phi = kp.y().atan2(kp.x());
        assert!((phi - 2.1).abs() < 1e-14);
        assert!((kp.z() - aberrate_cosine(0.2, 0.7)).abs() < 1e-15);
    }

    #[test]
    fn boost_mode_jacobians() {
        let v = BoostVelocity::along_z(0.6).unwrap();
        let r = boost_mode(&mode_mu(1.0, 0.6), &v);
        assert!((r.jac_solid_angle - 0.64).abs() < 1e-15);
        let r = boost_mode(&mode_mu(1.0, 1.0), &v);
        assert_eq!(r.mode_prime.khat().z(), 1.0);
        assert!((r.jac_freq - 2.0).abs() < 1e-15);

        let r = boost_mode(&mode_mu(3.0, 0.3), &BoostVelocity::rest());
        assert_eq!((r.jac_freq, r.jac_solid_angle), (1.0, 1.0));
        assert_eq!(r.mode_prime, mode_mu(3.0, 0.3));
    }

    #[test]
    fn inverse_examples() {
        let v = BoostVelocity::along_z(0.6).unwrap();
        let m = inverse_boost_mode(&mode_mu(0.5, 1.0), &v);
        assert!((m.omega() - 1.0).abs() < 1e-15);
        let m = inverse_boost_mode(&mode_mu(1.0, -0.6), &v);
        assert!(m.khat().z().abs() < 1e-15);
    }

    #[test]
    fn boosted_mode_stays_on_light_cone() {
        let v = make_boost(Vec3::new(0.3, -0.5, 0.4)).unwrap();
        for i in 0..50 {
            let mu = -1.0 + 2.0 * i as f64 / 49.0;
            let m = PhotonMode::new(2.0, polar_direction(mu, 0.3 * i as f64).unwrap()).unwrap();
            let r = boost_mode(&m, &v);
            assert!((r.mode_prime.khat().norm() - 1.0).abs() < 1e-15);
            // ω′ from the scalar Doppler formula matches γ|k′| built from the full vector.
            let k = m.khat() * m.omega();
            let axis = v.direction().unwrap();
            let kpar = axis.dot(k);
            let kprime = k - axis * kpar + axis * (v.gamma() * (kpar - v.speed() * m.omega()));
            assert!((kprime.norm() - r.mode_prime.omega()).abs() < 1e-14 * m.omega());
        }
    }

    #[test]
    fn field_boost_examples() {
        let v = BoostVelocity::along_z(0.0).unwrap();
        let f = FieldPair::new(Vec3::new(1.0, 2.0, 3.0), Vec3::new(-1.0, 0.5, 0.25));
        assert_eq!(field_boost(&f, &v), f);

        let v = make_boost(Vec3::new(0.6, 0.0, 0.0)).unwrap();
        let f = FieldPair::new(Vec3::Y, Vec3::ZERO);
        let g = field_boost(&f, &v);
        assert!(g.e.max_abs_diff(Vec3::new(0.0, 1.25, 0.0)) < 1e-15);
        assert!(g.b.max_abs_diff(Vec3::new(0.0, 0.0, -0.75)) < 1e-15);
        assert!((g.scalar_invariant() - 1.0).abs() < 1e-14);

        let f = FieldPair::new(Vec3::X * 2.0, Vec3::X * -0.5);
        assert_eq!(field_boost(&f, &v), f);
    }
}
