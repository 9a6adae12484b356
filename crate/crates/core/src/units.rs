//! Physical constants and the rest-frame temperature.
//!
//! Every formula in this crate is written with ħ, c and k_B taken from a
//! [`UnitSystem`]. The natural system sets all three to exactly 1, which makes
//! closed-form values such as π²/15 directly comparable. A custom system accepts
//! arbitrary positive constants, e.g. [`UnitSystem::si`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitMode {
    Natural,
    Custom,
}

/// The three constants entering the spectral distribution: ħ, c and k_B.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    hbar: f64,
    c: f64,
    k_b: f64,
    mode: UnitMode,
}

/// CODATA 2018 reduced Planck constant (J s).
pub const SI_HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum (m/s).
pub const SI_C: f64 = 299_792_458.0;
/// Boltzmann constant (J/K).
pub const SI_K_B: f64 = 1.380_649e-23;

impl UnitSystem {
    pub const fn natural() -> Self {
        UnitSystem {
            hbar: 1.0,
            c: 1.0,
            k_b: 1.0,
            mode: UnitMode::Natural,
        }
    }

    pub fn custom(hbar: f64, c: f64, k_b: f64) -> Result<Self> {
        for (name, value) in [("hbar", hbar), ("c", c), ("k_B", k_b)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConstant { name, value });
            }
        }
        Ok(UnitSystem {
            hbar,
            c,
            k_b,
            mode: UnitMode::Custom,
        })
    }

    /// Exact SI values (ħ, c, k_B) as a custom system.
    pub fn si() -> Self {
        UnitSystem {
            hbar: SI_HBAR,
            c: SI_C,
            k_b: SI_K_B,
            mode: UnitMode::Custom,
        }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn k_b(&self) -> f64 {
        self.k_b
    }

    pub fn mode(&self) -> UnitMode {
        self.mode
    }

    /// x = ħω / (k_B T). `temperature` must be positive.
    pub fn to_dimensionless(&self, omega: f64, temperature: f64) -> f64 {
        self.hbar * omega / (self.k_b * temperature)
    }

    /// Inverse of [`UnitSystem::to_dimensionless`].
    pub fn from_dimensionless(&self, x: f64, temperature: f64) -> f64 {
        x * (self.k_b * temperature) / self.hbar
    }

    /// ħ / (2πc)³, the prefactor of ω³ in the spectral distribution.
    pub fn spectral_prefactor(&self) -> f64 {
        let two_pi_c = 2.0 * std::f64::consts::PI * self.c;
        self.hbar / (two_pi_c * two_pi_c * two_pi_c)
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem::natural()
    }
}

/// Temperature of the radiation in its own rest frame. It is never transformed.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct RestTemperature(f64);

impl RestTemperature {
    pub fn new(kelvin: f64) -> Result<Self> {
        if kelvin.is_finite() && kelvin >= 0.0 {
            Ok(RestTemperature(kelvin))
        } else {
            Err(Error::InvalidTemperature(kelvin))
        }
    }

    pub const ZERO: RestTemperature = RestTemperature(0.0);

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

/// Characteristic thermal frequency k_B T / ħ, or `None` at T = 0 where no
/// thermal scale exists.
pub fn thermal_wavenumber(t: RestTemperature, u: &UnitSystem) -> Option<f64> {
    if t.is_zero() {
        None
    } else {
        Some(u.k_b * t.0 / u.hbar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_constants_are_exactly_one() {
        let u = UnitSystem::natural();
        assert_eq!((u.hbar(), u.c(), u.k_b()), (1.0, 1.0, 1.0));
        assert_eq!(u.mode(), UnitMode::Natural);
    }

    #[test]
    fn custom_rejects_nonpositive_constants() {
        assert!(matches!(
            UnitSystem::custom(0.0, 1.0, 1.0),
            Err(Error::InvalidConstant { name: "hbar", .. })
        ));
        assert!(UnitSystem::custom(1.0, -3.0, 1.0).is_err());
        assert!(UnitSystem::custom(1.0, 1.0, f64::NAN).is_err());
        assert_eq!(
            UnitSystem::custom(2.0, 3.0, 4.0).unwrap().mode(),
            UnitMode::Custom
        );
    }

    #[test]
    fn thermal_wavenumber_examples() {
        let nat = UnitSystem::natural();
        let t1 = RestTemperature::new(1.0).unwrap();
        let t2 = RestTemperature::new(2.0).unwrap();
        assert_eq!(thermal_wavenumber(t1, &nat), Some(1.0));
        assert_eq!(thermal_wavenumber(t2, &nat), Some(2.0));
        assert_eq!(thermal_wavenumber(RestTemperature::ZERO, &nat), None);

        let si = UnitSystem::si();
        let t = RestTemperature::new(2.7).unwrap();
        let expected = SI_K_B * 2.7 / SI_HBAR;
        let got = thermal_wavenumber(t, &si).unwrap();
        assert!((got - expected).abs() <= 1e-15 * expected);
    }

    #[test]
    fn negative_temperature_rejected() {
        assert_eq!(
            RestTemperature::new(-1.0),
            Err(Error::InvalidTemperature(-1.0))
        );
        assert!(RestTemperature::new(f64::INFINITY).is_err());
    }

    #[test]
    fn dimensionless_round_trip() {
        for u in [UnitSystem::natural(), UnitSystem::si()] {
            for &(omega, t) in &[(1.0, 1.0), (3.7e11, 2.725), (1e-3, 5e3), (42.0, 0.01)] {
                let x = u.to_dimensionless(omega, t);
                let back = u.from_dimensionless(x, t);
                assert!((back - omega).abs() <= 1e-13 * omega, "{omega} -> {back}");
            }
        }
    }
}
