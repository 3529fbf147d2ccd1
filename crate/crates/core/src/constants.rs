//! Fixed physical constants.
//!
//! CODATA 2018 values where applicable. Local gravity is configurable in the
//! operations that use it; `G_STANDARD` is only the default.

/// Reduced Planck constant (J·s), CODATA 2018 exact.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Default local gravitational acceleration (m/s²).
pub const G_STANDARD: f64 = 9.81;

/// Atomic mass unit (kg), CODATA 2018.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_codata() {
        assert!((HBAR - 1.054571817e-34).abs() < 1e-43);
    }

    #[test]
    fn amu_codata() {
        assert!((ATOMIC_MASS_UNIT - 1.66053906660e-27).abs() < 1e-36);
    }
}
