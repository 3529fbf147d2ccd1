//! Time-dependent lattice potentials in the form the split-step solver
//! consumes.
//!
//! Every lattice drive used here is spatially a single harmonic of the
//! two-photon wavevector: V(y, t) = offset(t) + a(t) cos(2ky) + b(t)
//! sin(2ky). The twin lattice collapses to a pulsating pure-cosine standing
//! wave; a single moving lattice picks up the sine component through its
//! traveling phase.

use crate::piecewise::PiecewiseLinear;
use crate::twinlattice::TwinLatticeField;

/// Spatial-harmonic decomposition of the potential at one instant.
#[derive(Debug, Clone, Copy)]
pub struct DriveCoeffs {
    pub offset: f64,
    pub cos_amp: f64,
    pub sin_amp: f64,
}

/// A lattice potential the solver can step through.
pub trait LatticeDrive {
    /// Two-photon spatial frequency is `2 * wavenumber()`.
    fn wavenumber(&self) -> f64;

    fn coeffs(&self, t: f64) -> DriveCoeffs;

    /// Depth scale entering the step-size guard (J).
    fn depth_scale(&self) -> f64;

    /// Upper bound on |cos_amp| + |sin_amp| over the run (J).
    fn oscillatory_bound(&self) -> f64;
}

impl LatticeDrive for TwinLatticeField {
    fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    fn coeffs(&self, t: f64) -> DriveCoeffs {
        // cos^2(ky - phi/2) + cos^2(ky + phi/2) + c 2cos(ky+phi/2)cos(ky-phi/2)
        //   = 1 + c cos(phi) + (cos(phi) + c) cos(2ky)
        let v0 = self.depth_at(t);
        let c = self.standing_wave_coefficient();
        let cos_phi = self.accumulated_phase(t).cos();
        DriveCoeffs {
            offset: v0 * (1.0 + c * cos_phi),
            cos_amp: v0 * (cos_phi + c),
            sin_amp: 0.0,
        }
    }

    fn depth_scale(&self) -> f64 {
        self.depth
    }

    fn oscillatory_bound(&self) -> f64 {
        self.depth * self.depth_envelope.max_abs() * (1.0 + self.standing_wave_coefficient())
    }
}

/// One moving lattice, `V0(t) cos^2(ky - phi/2)`, used as the independent
/// reference for Landau-Zener checks and trapping tests.
#[derive(Debug, Clone)]
pub struct SingleLatticeField {
    pub depth: f64,
    pub wavenumber: f64,
    /// Frequency offset driving the lattice velocity (rad/s).
    pub chirp: PiecewiseLinear,
    pub depth_envelope: PiecewiseLinear,
}

impl SingleLatticeField {
    pub fn new(depth: f64, wavenumber: f64, chirp: PiecewiseLinear) -> Self {
        Self { depth, wavenumber, chirp, depth_envelope: PiecewiseLinear::constant(1.0) }
    }
}

impl LatticeDrive for SingleLatticeField {
    fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    fn coeffs(&self, t: f64) -> DriveCoeffs {
        let v0 = self.depth * self.depth_envelope.eval(t);
        let phi = self.chirp.integral(t);
        DriveCoeffs {
            offset: 0.5 * v0,
            cos_amp: 0.5 * v0 * phi.cos(),
            sin_amp: 0.5 * v0 * phi.sin(),
        }
    }

    fn depth_scale(&self) -> f64 {
        self.depth
    }

    fn oscillatory_bound(&self) -> f64 {
        self.depth * self.depth_envelope.max_abs()
    }
}
