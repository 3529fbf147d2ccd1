//! Derived lattice quantities for one species and detuning.

use crate::constants::HBAR;
use crate::error::CoreError;
use crate::species::AtomSpecies;
use crate::Result;

/// Wavenumber, recoil scales and detuning of the lattice light.
#[derive(Debug, Clone)]
pub struct LatticeParams {
    pub species: AtomSpecies,
    /// Lattice wavenumber (1/m).
    pub wavenumber: f64,
    /// Recoil energy hbar^2 k^2/(2m) (J).
    pub recoil_energy: f64,
    /// Recoil velocity hbar k/m (m/s).
    pub recoil_velocity: f64,
    /// Detuning of the lattice light from the transition (rad/s), sign kept.
    pub detuning: f64,
}

impl LatticeParams {
    /// Derive wavenumber and recoil quantities; the detuning magnitude enters
    /// the scattering rates, its sign is preserved for bookkeeping.
    pub fn derive(species: AtomSpecies, detuning: f64) -> Result<Self> {
        if detuning == 0.0 {
            return Err(CoreError::InvalidParameter(
                "lattice detuning must be nonzero".into(),
            ));
        }
        let wavenumber = species.wavenumber();
        let recoil_energy = species.recoil_energy();
        let recoil_velocity = species.recoil_velocity();
        Ok(Self { species, wavenumber, recoil_energy, recoil_velocity, detuning })
    }

    /// Recoil angular frequency E_r/hbar (rad/s).
    pub fn recoil_frequency(&self) -> f64 {
        self.recoil_energy / HBAR
    }

    /// Momentum of n photon recoils (kg m/s).
    pub fn momentum(&self, n: f64) -> f64 {
        n * HBAR * self.wavenumber
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rb_lattice() -> LatticeParams {
        LatticeParams::derive(AtomSpecies::rb87(), 2.0 * std::f64::consts::PI * 100e9).unwrap()
    }

    #[test]
    fn wavenumber_value() {
        // k = 2 pi / lambda
        let lat = rb_lattice();
        assert!((lat.wavenumber - 8.054e6).abs() / 8.054e6 < 1e-3);
    }

    #[test]
    fn recoil_energy_definition() {
        let lat = rb_lattice();
        let expect = HBAR * HBAR * lat.wavenumber * lat.wavenumber / (2.0 * lat.species.mass);
        assert_eq!(lat.recoil_energy, expect);
    }

    #[test]
    fn momentum_width_in_velocity_units() {
        // sigma_v = 0.03 hbar k / m -> 0.1765 mm/s
        let lat = rb_lattice();
        let sigma_v = 0.03 * lat.recoil_velocity;
        assert!((sigma_v - 0.1765e-3).abs() < 1e-6);
    }

    #[test]
    fn zero_detuning_rejected() {
        assert!(LatticeParams::derive(AtomSpecies::rb87(), 0.0).is_err());
    }
}
