//! Atomic species constants.

use crate::constants::{ATOMIC_MASS_UNIT, HBAR};
use crate::error::CoreError;
use crate::Result;

/// Physical constants of one atomic species on its cycling transition.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomSpecies {
    pub name: String,
    /// Atomic mass (kg).
    pub mass: f64,
    /// Wavelength of the driving transition (m).
    pub transition_wavelength: f64,
    /// Natural linewidth of the transition (rad/s).
    pub natural_linewidth: f64,
}

impl AtomSpecies {
    pub fn new(name: &str, mass: f64, wavelength: f64, linewidth: f64) -> Result<Self> {
        if mass <= 0.0 || wavelength <= 0.0 || linewidth <= 0.0 {
            return Err(CoreError::InvalidParameter(format!(
                "species `{name}`: mass, wavelength and linewidth must be positive"
            )));
        }
        Ok(Self {
            name: name.to_owned(),
            mass,
            transition_wavelength: wavelength,
            natural_linewidth: linewidth,
        })
    }

    /// Rubidium-87 on the D2 line.
    pub fn rb87() -> Self {
        Self {
            name: "Rb87".to_owned(),
            mass: 1.44316e-25,
            transition_wavelength: 780.241e-9,
            natural_linewidth: 2.0 * std::f64::consts::PI * 6.065e6,
        }
    }

    /// Cesium-133 on the D2 line.
    pub fn cs133() -> Self {
        Self {
            name: "Cs133".to_owned(),
            mass: 132.905_451_96 * ATOMIC_MASS_UNIT,
            transition_wavelength: 852.35e-9,
            natural_linewidth: 2.0 * std::f64::consts::PI * 5.234e6,
        }
    }

    /// Look up a species by identifier.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "Rb87" | "rb87" => Ok(Self::rb87()),
            "Cs133" | "cs133" => Ok(Self::cs133()),
            other => Err(CoreError::UnknownSpecies(other.to_owned())),
        }
    }

    /// Lattice wavenumber 2*pi/lambda (1/m).
    pub fn wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.transition_wavelength
    }

    /// Single-photon recoil velocity hbar*k/m (m/s).
    pub fn recoil_velocity(&self) -> f64 {
        HBAR * self.wavenumber() / self.mass
    }

    /// Recoil energy hbar^2 k^2 / (2 m) (J).
    pub fn recoil_energy(&self) -> f64 {
        let k = self.wavenumber();
        HBAR * HBAR * k * k / (2.0 * self.mass)
    }
}
