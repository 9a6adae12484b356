use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vec3::Vec3;

/// Observer velocity relative to the blackbody rest frame, as β = v/c.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostVelocity {
    beta: Vec3,
    speed: f64,
    gamma: f64,
}

/// Validates β and caches γ.
///
/// γ is evaluated as 1/√((1−|β|)(1+|β|)), which avoids forming 1 − |β|² directly
/// when |β| is close to 1.
pub fn make_boost(beta: Vec3) -> Result<BoostVelocity> {
    if !beta.is_finite() {
        return Err(Error::NonFiniteVelocity);
    }
    let speed = beta.norm();
    if speed >= 1.0 {
        return Err(Error::Superluminal { magnitude: speed });
    }
    let gamma = if speed == 0.0 {
        1.0
    } else {
        1.0 / ((1.0 - speed) * (1.0 + speed)).sqrt()
    };
    Ok(BoostVelocity { beta, speed, gamma })
}

impl BoostVelocity {
    pub fn rest() -> Self {
        BoostVelocity {
            beta: Vec3::ZERO,
            speed: 0.0,
            gamma: 1.0,
        }
    }

    /// Boost with speed `beta` along +z. Negative values point along −z.
    pub fn along_z(beta: f64) -> Result<Self> {
        make_boost(Vec3::new(0.0, 0.0, beta))
    }

    pub fn beta(&self) -> Vec3 {
        self.beta
    }

    /// |β|
    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn is_rest(&self) -> bool {
        self.speed == 0.0
    }

    /// Unit vector v̂, or `None` in the rest frame.
    pub fn direction(&self) -> Option<Vec3> {
        if self.is_rest() {
            None
        } else {
            Some(self.beta * (1.0 / self.speed))
        }
    }

    /// v̂, falling back to +z when β = 0 so that μ = k̂·v̂ is always defined.
    pub fn axis(&self) -> Vec3 {
        self.direction().unwrap_or(Vec3::Z)
    }

    pub(crate) fn reversed(&self) -> Self {
        BoostVelocity {
            beta: -self.beta,
            speed: self.speed,
            gamma: self.gamma,
        }
    }
}
