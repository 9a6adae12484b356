use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vec3::Vec3;

/// Directions whose norm is within this distance of 1 are silently renormalized.
pub const DIRECTION_RENORM_TOL: f64 = 1e-9;

/// A single photon mode: angular frequency ω ≥ 0 and unit propagation direction k̂.
/// The wavevector is (ω/c) k̂.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhotonMode {
    omega: f64,
    khat: Vec3,
}

/// Checks that `v` is a unit vector up to [`DIRECTION_RENORM_TOL`] and renormalizes it.
pub fn unit_direction(v: Vec3) -> Result<Vec3> {
    let norm = v.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > DIRECTION_RENORM_TOL {
        return Err(Error::NotUnitDirection { norm });
    }
    if norm == 1.0 {
        Ok(v)
    } else {
        Ok(v * (1.0 / norm))
    }
}

impl PhotonMode {
    pub fn new(omega: f64, khat: Vec3) -> Result<Self> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::InvalidFrequency(omega));
        }
        Ok(PhotonMode {
            omega,
            khat: unit_direction(khat)?,
        })
    }

    /// Mode with polar cosine `mu` and azimuth `phi` measured about +z.
    pub fn from_polar(omega: f64, mu: f64, phi: f64) -> Result<Self> {
        Self::new(omega, polar_direction(mu, phi)?)
    }

    /// Internal constructor for directions already known to be unit length.
    pub(crate) fn from_parts(omega: f64, khat: Vec3) -> Self {
        PhotonMode { omega, khat }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn khat(&self) -> Vec3 {
        self.khat
    }

    /// |k| = ω/c.
    pub fn wavenumber(&self, c: f64) -> f64 {
        self.omega / c
    }
}

/// Unit vector with cos θ = `mu` and azimuth `phi` about +z.
pub fn polar_direction(mu: f64, phi: f64) -> Result<Vec3> {
    if !(mu.is_finite() && (-1.0..=1.0).contains(&mu)) {
        return Err(Error::InvalidConfig(format!(
            "direction cosine must lie in [-1, 1], got {mu}"
        )));
    }
    let s = ((1.0 - mu) * (1.0 + mu)).sqrt();
    Ok(Vec3::new(s * phi.cos(), s * phi.sin(), mu))
}

/// Unit vector with cosine `mu` to the unit vector `axis` and azimuth `phi`
/// about it. For `axis` = +z this is [`polar_direction`].
pub fn direction_about(axis: Vec3, mu: f64, phi: f64) -> Vec3 {
    let helper = if axis.x().abs() < 0.9 { Vec3::X } else { Vec3::Y };
    let e1 = (helper - axis * helper.dot(axis)).normalized();
    let e2 = axis.cross(e1);
    let s = ((1.0 - mu) * (1.0 + mu)).sqrt();
    (axis * mu + e1 * (s * phi.cos()) + e2 * (s * phi.sin())).normalized()
}

/// A unit vector with cosine `mu` to `axis`.
pub fn direction_with_cosine(axis: Vec3, mu: f64) -> Vec3 {
    direction_about(axis, mu, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_norm_error_is_renormalized() {
        let m = PhotonMode::new(1.0, Vec3::new(0.0, 0.0, 1.0 + 5e-10)).unwrap();
        assert_eq!(m.khat(), Vec3::Z);
    }

    #[test]
    fn large_norm_error_rejected() {
        assert!(matches!(
            PhotonMode::new(1.0, Vec3::new(0.0, 0.0, 1.001)),
            Err(Error::NotUnitDirection { .. })
        ));
        assert!(PhotonMode::new(1.0, Vec3::ZERO).is_err());
    }

    #[test]
    fn negative_frequency_rejected() {
        assert_eq!(
            PhotonMode::new(-1.0, Vec3::Z),
            Err(Error::InvalidFrequency(-1.0))
        );
    }

    #[test]
    fn polar_direction_is_unit() {
        for &mu in &[-1.0, -0.3, 0.0, 0.999_999, 1.0] {
            let d = polar_direction(mu, 1.3).unwrap();
            assert!((d.norm() - 1.0).abs() < 1e-15);
            assert_eq!(d.z(), mu);
        }
        assert!(polar_direction(1.5, 0.0).is_err());
    }

    #[test]
    fn direction_with_cosine_is_unit() {
        for axis in [Vec3::Z, Vec3::X, Vec3::new(0.6, 0.0, 0.8)] {
            for mu in [-1.0, -0.3, 0.0, 0.99] {
                let d = direction_with_cosine(axis, mu);
                assert!((d.norm() - 1.0).abs() < 1e-15);
                assert!((d.dot(axis) - mu).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn direction_about_z_matches_polar() {
        for &(mu, phi) in &[(0.3, 1.1), (-0.8, 4.0), (0.0, 0.0)] {
            let a = direction_about(Vec3::Z, mu, phi);
            let b = polar_direction(mu, phi).unwrap();
            assert!(a.max_abs_diff(b) < 1e-15);
        }
    }
}
